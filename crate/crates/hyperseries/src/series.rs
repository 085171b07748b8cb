//! Exact truncated power series in the face variables `x_1..x_K` (light
//! faces) and `y_1..y_K` (dark faces), graded by total degree.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::laurent::Coefficient;

/// Exponents of `x_1..x_K` followed by those of `y_1..y_K`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// The empty monomial for `cap` degrees.
    pub fn one(cap: usize) -> Self {
        Monomial {
            exps: vec![0; 2 * cap],
        }
    }

    /// Builds a monomial from its light (`x`) and dark (`y`) exponent vectors.
    pub fn from_exponents(x: &[u32], y: &[u32]) -> Self {
        assert_eq!(
            x.len(),
            y.len(),
            "both exponent vectors need one entry per degree"
        );
        Monomial {
            exps: x.iter().chain(y).copied().collect(),
        }
    }

    /// The monomial `x_degree`.
    pub fn x(cap: usize, degree: usize) -> Self {
        let mut m = Monomial::one(cap);
        m.exps[degree - 1] = 1;
        m
    }

    /// The monomial `y_degree`.
    pub fn y(cap: usize, degree: usize) -> Self {
        let mut m = Monomial::one(cap);
        m.exps[cap + degree - 1] = 1;
        m
    }

    pub fn cap(&self) -> usize {
        self.exps.len() / 2
    }

    /// Total number of variable factors.
    pub fn grade(&self) -> usize {
        self.exps.iter().map(|&e| e as usize).sum()
    }

    pub fn x_exponents(&self) -> &[u32] {
        &self.exps[..self.cap()]
    }

    pub fn y_exponents(&self) -> &[u32] {
        &self.exps[self.cap()..]
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cap = self.cap();
        let mut factors = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let name = if i < cap {
                format!("x_{}", i + 1)
            } else {
                format!("y_{}", i - cap + 1)
            };
            factors.push(if e == 1 { name } else { format!("{name}^{e}") });
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

/// A power series with exact rational coefficients, truncated above grade
/// `order`, in the variables `x_k, y_k` for `k <= cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    cap: usize,
    order: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl TruncatedSeries {
    pub fn zero(cap: usize, order: usize) -> Self {
        TruncatedSeries {
            cap,
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(cap: usize, order: usize) -> Self {
        Self::monomial(cap, order, Monomial::one(cap), BigRational::one())
    }

    pub fn constant(cap: usize, order: usize, c: BigRational) -> Self {
        Self::monomial(cap, order, Monomial::one(cap), c)
    }

    /// The series `c * m` (zero when `m` lies above the truncation order).
    pub fn monomial(cap: usize, order: usize, m: Monomial, c: BigRational) -> Self {
        assert_eq!(m.cap(), cap, "monomial built for another degree cap");
        let mut s = Self::zero(cap, order);
        s.add_term(m, c);
        s
    }

    /// The variable `x_degree` (zero when `degree > cap`).
    pub fn x(cap: usize, order: usize, degree: usize) -> Self {
        if degree == 0 || degree > cap {
            return Self::zero(cap, order);
        }
        Self::monomial(cap, order, Monomial::x(cap, degree), BigRational::one())
    }

    /// The variable `y_degree` (zero when `degree > cap`).
    pub fn y(cap: usize, order: usize, degree: usize) -> Self {
        if degree == 0 || degree > cap {
            return Self::zero(cap, order);
        }
        Self::monomial(cap, order, Monomial::y(cap, degree), BigRational::one())
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Adds `c * m`, dropping it when it lies above the truncation order.
    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if m.grade() > self.order || c.is_zero() {
            return;
        }
        let sum = self.terms.remove(&m).unwrap_or_else(BigRational::zero) + c;
        if !sum.is_zero() {
            self.terms.insert(m, sum);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.cap, self.order);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut out = Self::one(self.cap, self.order);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    /// The same series truncated to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        let mut out = Self::zero(self.cap, order.min(self.order));
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.clone());
        }
        out
    }

    fn derivative(&self, index: usize) -> Self {
        // Differentiating lowers the grade, so only grades below `order` are exact.
        let mut out = Self::zero(self.cap, self.order.saturating_sub(1));
        for (m, v) in &self.terms {
            let e = m.exps[index];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.exps[index] -= 1;
            out.add_term(dm, v * BigRational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Partial derivative in `x_degree`, exact up to grade `order - 1`.
    pub fn derivative_x(&self, degree: usize) -> Self {
        self.derivative(degree - 1)
    }

    /// Partial derivative in `y_degree`, exact up to grade `order - 1`.
    pub fn derivative_y(&self, degree: usize) -> Self {
        self.derivative(self.cap + degree - 1)
    }

    /// Tab-separated table: a header naming `x_1..x_K y_1..y_K coefficient`,
    /// then one row per nonzero coefficient with the exponents and the value.
    pub fn to_tsv(&self) -> String {
        let mut header: Vec<String> = (1..=self.cap).map(|k| format!("x_{k}")).collect();
        header.extend((1..=self.cap).map(|k| format!("y_{k}")));
        header.push("coefficient".into());
        let mut out = header.join("\t");
        out.push('\n');
        for (m, c) in &self.terms {
            let row: Vec<String> = m
                .exps
                .iter()
                .map(u32::to_string)
                .chain(std::iter::once(c.to_string()))
                .collect();
            out.push_str(&row.join("\t"));
            out.push('\n');
        }
        out
    }

    /// Reads a table written by [`TruncatedSeries::to_tsv`], truncated at `order`.
    pub fn from_tsv(text: &str, order: usize) -> Result<Self, TsvError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(TsvError {
            line: 1,
            message: "empty table".into(),
        })?;
        let columns = header.split('\t').count();
        if columns < 3 || columns % 2 == 0 {
            return Err(TsvError {
                line: 1,
                message: format!("expected 2K + 1 columns, found {columns}"),
            });
        }
        let cap = (columns - 1) / 2;
        let mut s = Self::zero(cap, order);
        for (i, line) in lines {
            let err = |message: String| TsvError {
                line: i + 1,
                message,
            };
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != columns {
                return Err(err(format!(
                    "expected {columns} fields, found {}",
                    fields.len()
                )));
            }
            let exps: Vec<u32> = fields[..2 * cap]
                .iter()
                .map(|f| {
                    f.trim()
                        .parse()
                        .map_err(|_| err(format!("bad exponent `{f}`")))
                })
                .collect::<Result<_, _>>()?;
            let c: BigRational = fields[2 * cap]
                .trim()
                .parse()
                .map_err(|_| err(format!("bad coefficient `{}`", fields[2 * cap])))?;
            s.add_term(Monomial { exps }, c);
        }
        Ok(s)
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.cap, other.cap, "series over different variable sets");
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check_compatible(other);
        let mut out = TruncatedSeries::zero(self.cap, self.order.min(other.order));
        for (m, v) in self.terms.iter().chain(&other.terms) {
            out.add_term(m.clone(), v.clone());
        }
        out
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&-BigRational::one())
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, other: &TruncatedSeries) -> TruncatedSeries {
        self + &-other
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, other: &TruncatedSeries) -> TruncatedSeries {
        self.check_compatible(other);
        let order = self.order.min(other.order);
        let mut out = TruncatedSeries::zero(self.cap, order);
        for (ma, va) in &self.terms {
            let ga = ma.grade();
            for (mb, vb) in &other.terms {
                if ga + mb.grade() <= order {
                    out.add_term(ma.times(mb), va * vb);
                }
            }
        }
        out
    }
}

impl Coefficient for TruncatedSeries {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn zero_like(&self) -> Self {
        TruncatedSeries::zero(self.cap, self.order)
    }
    fn one_like(&self) -> Self {
        TruncatedSeries::one(self.cap, self.order)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("{c}*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A malformed coefficient table.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct TsvError {
    pub line: usize,
    pub message: String,
}

/// Shorthand for an integer as an exact rational.
pub fn rational(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncation_drops_high_grades() {
        let x1 = TruncatedSeries::x(2, 3, 1);
        let s = &TruncatedSeries::one(2, 3) + &x1;
        let cube = s.pow(5);
        assert_eq!(cube.terms().len(), 4);
        assert_eq!(
            cube.coefficient(&Monomial::from_exponents(&[3, 0], &[0, 0])),
            rational(10)
        );
    }

    #[test]
    fn derivative_of_a_product() {
        let (x, y) = (TruncatedSeries::x(2, 4, 2), TruncatedSeries::y(2, 4, 1));
        let p = &x.pow(2) * &y;
        let d = p.derivative_x(2);
        assert_eq!(d, (&x * &y).scale(&rational(2)).truncate(3));
    }

    #[test]
    fn tables_round_trip() {
        let s = (&TruncatedSeries::x(2, 3, 1) + &TruncatedSeries::y(2, 3, 2))
            .pow(2)
            .scale(&BigRational::new(3.into(), 2.into()));
        let text = s.to_tsv();
        assert!(text.starts_with("x_1\tx_2\ty_1\ty_2\tcoefficient\n"));
        assert_eq!(TruncatedSeries::from_tsv(&text, 3).unwrap(), s);
        assert!(TruncatedSeries::from_tsv("x_1\ty_1\tcoefficient\n1\t0\n", 3).is_err());
    }

    #[test]
    fn variables_above_the_cap_vanish() {
        assert!(TruncatedSeries::x(3, 5, 4).is_zero());
        assert_eq!(Monomial::y(3, 2).to_string(), "y_2");
    }
}
