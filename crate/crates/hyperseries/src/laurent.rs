//! Laurent polynomials in an auxiliary variable `u` with coefficients in a
//! commutative ring (truncated series or symbolic polynomials).

use std::collections::BTreeMap;

/// The ring operations needed for coefficients.
pub trait Coefficient: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    /// The zero of the ring `self` lives in.
    fn zero_like(&self) -> Self;
    /// The unit of the ring `self` lives in.
    fn one_like(&self) -> Self;
}

/// A finite sum of `c_k u^k` over integer exponents `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Laurent<C> {
    terms: BTreeMap<i64, C>,
}

impl<C: Coefficient> Default for Laurent<C> {
    fn default() -> Self {
        Laurent {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Coefficient> Laurent<C> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `c u^exponent`.
    pub fn add_term(&mut self, exponent: i64, c: C) {
        if c.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&exponent) {
            Some(old) => old.plus(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(exponent, sum);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, C> {
        &self.terms
    }

    /// The coefficient of `u^exponent`, if nonzero.
    pub fn coefficient(&self, exponent: i64) -> Option<&C> {
        self.terms.get(&exponent)
    }

    /// The coefficient of `u^exponent`, or `zero` when absent.
    pub fn coefficient_or(&self, exponent: i64, zero: &C) -> C {
        self.terms
            .get(&exponent)
            .cloned()
            .unwrap_or_else(|| zero.clone())
    }

    pub fn times(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_term(a + b, ca.times(cb));
            }
        }
        out
    }

    /// `self^n`, where `one` is the unit of the coefficient ring.
    pub fn pow(&self, n: usize, one: &C) -> Self {
        let mut out = Self::new();
        out.add_term(0, one.clone());
        for _ in 0..n {
            out = out.times(self);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{rational, TruncatedSeries};

    #[test]
    fn binomial_coefficients() {
        let one = TruncatedSeries::one(1, 0);
        let mut p = Laurent::new();
        p.add_term(1, one.clone());
        p.add_term(-1, one.clone());
        let q = p.pow(4, &one);
        assert_eq!(
            q.coefficient(0).unwrap(),
            &TruncatedSeries::constant(1, 0, rational(6))
        );
        assert_eq!(q.coefficient(-4).unwrap(), &one);
        assert!(q.coefficient(1).is_none());
    }
}
