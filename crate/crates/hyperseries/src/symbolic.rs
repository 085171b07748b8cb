//! Polynomials over the face variables and the auxiliary series `L_i`, `W_i`,
//! used to emit and compare algebraic systems.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::laurent::Coefficient;
use crate::series::TruncatedSeries;

/// A symbol of the systems: a face variable or an auxiliary series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// `x_k`: light faces of degree `k`.
    X(usize),
    /// `y_k`: dark faces of degree `k`.
    Y(usize),
    /// Planted trees whose root is not a dark square, by root weight.
    L(i64),
    /// Planted trees whose root is a dark square, by root weight.
    W(i64),
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let index = |i: i64| {
            if i < 0 {
                format!("{{{i}}}")
            } else {
                i.to_string()
            }
        };
        match *self {
            Atom::X(k) => write!(f, "x_{k}"),
            Atom::Y(k) => write!(f, "y_{k}"),
            Atom::L(i) => write!(f, "L_{}", index(i)),
            Atom::W(i) => write!(f, "W_{}", index(i)),
        }
    }
}

type Term = Vec<(Atom, u32)>;

/// A polynomial with exact rational coefficients in the atoms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Term, BigRational>,
}

fn multiply_terms(a: &Term, b: &Term) -> Term {
    let mut powers: BTreeMap<Atom, u32> = a.iter().copied().collect();
    for &(atom, e) in b {
        *powers.entry(atom).or_insert(0) += e;
    }
    powers.into_iter().collect()
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly::zero();
        p.add_term(Vec::new(), c);
        p
    }

    pub fn integer(n: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn atom(a: Atom) -> Self {
        let mut p = Poly::zero();
        p.add_term(vec![(a, 1)], BigRational::one());
        p
    }

    fn add_term(&mut self, t: Term, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let sum = self.terms.remove(&t).unwrap_or_else(BigRational::zero) + c;
        if !sum.is_zero() {
            self.terms.insert(t, sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value, when the polynomial has no atom.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (t, c) in &other.terms {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ta, ca) in &self.terms {
            for (tb, cb) in &other.terms {
                out.add_term(multiply_terms(ta, tb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        let mut out = Poly::zero();
        for (t, v) in &self.terms {
            out.add_term(t.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut out = Poly::integer(1);
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// Every atom occurring in some term.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        self.terms.keys().flatten().map(|&(a, _)| a).collect()
    }

    /// Replaces atoms by polynomials; atoms mapped to `None` are kept.
    pub fn substitute(&self, value: &impl Fn(Atom) -> Option<Poly>) -> Poly {
        let mut out = Poly::zero();
        for (t, c) in &self.terms {
            let mut product = Poly::constant(c.clone());
            for &(atom, e) in t {
                let factor = value(atom).unwrap_or_else(|| Poly::atom(atom));
                product = product.mul(&factor.pow(e));
            }
            out = out.add(&product);
        }
        out
    }

    /// Evaluates the polynomial on truncated series.
    pub fn evaluate(
        &self,
        cap: usize,
        order: usize,
        value: &impl Fn(Atom) -> TruncatedSeries,
    ) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(cap, order);
        for (t, c) in &self.terms {
            let mut product = TruncatedSeries::constant(cap, order, c.clone());
            for &(atom, e) in t {
                product = &product * &value(atom).pow(e as usize);
            }
            out = &out + &product;
        }
        out
    }

    /// Parses an expression such as `x_4(1+W_0)^3` or `2y_3L_2L_3`;
    /// juxtaposition is multiplication.
    pub fn parse(text: &str) -> Result<Poly, ParseError> {
        let tokens = tokenize(text)?;
        let mut parser = Parser {
            tokens: &tokens,
            pos: 0,
        };
        let p = parser.expr()?;
        if parser.pos != tokens.len() {
            return Err(ParseError(format!(
                "unexpected input after position {}",
                parser.pos
            )));
        }
        Ok(p)
    }
}

impl Coefficient for Poly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn times(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn zero_like(&self) -> Self {
        Poly::zero()
    }
    fn one_like(&self) -> Self {
        Poly::integer(1)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Lower total degree first, then the atom order.
        let mut terms: Vec<(&Term, &BigRational)> = self.terms.iter().collect();
        terms.sort_by_key(|(t, _)| (t.iter().map(|&(_, e)| e).sum::<u32>(), (*t).clone()));
        for (i, (t, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let magnitude = c.abs();
            let factors: Vec<String> = t
                .iter()
                .map(|&(a, e)| {
                    if e == 1 {
                        a.to_string()
                    } else {
                        format!("{a}^{e}")
                    }
                })
                .collect();
            match (magnitude.is_one(), factors.is_empty()) {
                (true, false) => write!(f, "{}", factors.join("*"))?,
                (_, true) => write!(f, "{magnitude}")?,
                (false, false) => write!(f, "{magnitude}*{}", factors.join("*"))?,
            }
        }
        Ok(())
    }
}

/// A malformed expression or system.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error: {0}")]
pub struct ParseError(pub String);

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Number(BigInt),
    Atom(Atom),
    Plus,
    Minus,
    Times,
    Power,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let number = |i: &mut usize| -> Option<String> {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        (*i > start).then(|| chars[start..*i].iter().collect())
    };
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Times);
                i += 1;
            }
            '^' => {
                out.push(Token::Power);
                i += 1;
            }
            '(' => {
                out.push(Token::Open);
                i += 1;
            }
            ')' => {
                out.push(Token::Close);
                i += 1;
            }
            '0'..='9' => {
                let digits = number(&mut i).expect("at least one digit");
                out.push(Token::Number(digits.parse().expect("digits")));
            }
            'x' | 'y' | 'L' | 'W' => {
                i += 1;
                if chars.get(i) != Some(&'_') {
                    return Err(ParseError(format!("expected '_' after '{c}'")));
                }
                i += 1;
                let braced = chars.get(i) == Some(&'{');
                if braced {
                    i += 1;
                }
                let negative = chars.get(i) == Some(&'-');
                if negative {
                    i += 1;
                }
                let digits = number(&mut i)
                    .ok_or_else(|| ParseError(format!("missing index after '{c}_'")))?;
                if braced {
                    if chars.get(i) != Some(&'}') {
                        return Err(ParseError("unclosed index brace".into()));
                    }
                    i += 1;
                }
                let index: i64 = digits
                    .parse()
                    .map_err(|_| ParseError("index out of range".into()))?;
                let index = if negative { -index } else { index };
                let unsigned = || {
                    usize::try_from(index)
                        .map_err(|_| ParseError(format!("negative degree for '{c}'")))
                };
                out.push(Token::Atom(match c {
                    'x' => Atom::X(unsigned()?),
                    'y' => Atom::Y(unsigned()?),
                    'L' => Atom::L(index),
                    _ => Atom::W(index),
                }));
            }
            other => return Err(ParseError(format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn expr(&mut self) -> Result<Poly, ParseError> {
        let mut acc = if self.peek() == Some(&Token::Minus) {
            self.pos += 1;
            self.term()?.scale(&-BigRational::one())
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Token::Times) => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(Token::Number(_) | Token::Atom(_) | Token::Open) => {
                    acc = acc.mul(&self.factor()?)
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = match self.peek().cloned() {
            Some(Token::Number(n)) => {
                self.pos += 1;
                Poly::constant(BigRational::from_integer(n))
            }
            Some(Token::Atom(a)) => {
                self.pos += 1;
                Poly::atom(a)
            }
            Some(Token::Open) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Token::Close) {
                    return Err(ParseError("missing ')'".into()));
                }
                self.pos += 1;
                inner
            }
            other => return Err(ParseError(format!("unexpected token {other:?}"))),
        };
        if self.peek() == Some(&Token::Power) {
            self.pos += 1;
            let Some(Token::Number(e)) = self.peek().cloned() else {
                return Err(ParseError("exponent must be a nonnegative integer".into()));
            };
            self.pos += 1;
            let e = u32::try_from(e).map_err(|_| ParseError("exponent too large".into()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }
}

/// A list of equations `atom = polynomial`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PolySystem {
    pub equations: BTreeMap<Atom, Poly>,
}

impl PolySystem {
    /// Parses equations `A = expr` separated by commas, semicolons or newlines.
    pub fn parse(text: &str) -> Result<PolySystem, ParseError> {
        let mut equations = BTreeMap::new();
        for part in text
            .split([',', ';', '\n'])
            .map(str::trim)
            .filter(|p| !p.is_empty())
        {
            let (lhs, rhs) = part
                .split_once('=')
                .ok_or_else(|| ParseError(format!("equation without '=': {part}")))?;
            let lhs_tokens = tokenize(lhs)?;
            let [Token::Atom(atom)] = lhs_tokens.as_slice() else {
                return Err(ParseError(format!(
                    "left side must be a single series: {lhs}"
                )));
            };
            if equations.insert(*atom, Poly::parse(rhs)?).is_some() {
                return Err(ParseError(format!("two equations for {atom}")));
            }
        }
        Ok(PolySystem { equations })
    }

    /// The equations present in one system but not equal in the other, as
    /// `(atom, left, right)` with `None` for a missing equation.
    pub fn differences(&self, other: &PolySystem) -> Vec<(Atom, Option<Poly>, Option<Poly>)> {
        let atoms: BTreeSet<Atom> = self
            .equations
            .keys()
            .chain(other.equations.keys())
            .copied()
            .collect();
        atoms
            .into_iter()
            .filter_map(|a| {
                let (l, r) = (self.equations.get(&a), other.equations.get(&a));
                (l != r).then(|| (a, l.cloned(), r.cloned()))
            })
            .collect()
    }
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Series first (L before W), then by index.
        for (atom, rhs) in &self.equations {
            writeln!(f, "{atom} = {rhs}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_juxtaposition_and_powers() {
        let p = Poly::parse("2y_3L_2L_3").unwrap();
        let q = Poly::parse("2*y_3*L_2*L_3").unwrap();
        assert_eq!(p, q);
        let cube = Poly::parse("x_4(1+W_0)^3").unwrap();
        assert_eq!(
            cube.to_string(),
            "x_4 + 3*x_4*W_0 + 3*x_4*W_0^2 + x_4*W_0^3"
        );
    }

    #[test]
    fn round_trips_through_display() {
        let p = Poly::parse("W_1^3+2W_1W_2+W_3 - 7 L_{-2}").unwrap();
        assert_eq!(Poly::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(Poly::parse("x4").is_err());
        assert!(Poly::parse("(L_1").is_err());
        assert!(PolySystem::parse("L_1 + L_2 = 3").is_err());
    }

    #[test]
    fn substitution() {
        let p = Poly::parse("L_4 W_1 + L_4^2").unwrap();
        let q = p.substitute(&|a| (a == Atom::L(4)).then(|| Poly::integer(1)));
        assert_eq!(q, Poly::parse("W_1 + 1").unwrap());
    }
}
