//! Ring laws for truncated series and symbolic polynomials.

use hyperseries::{rational, Monomial, Poly, TruncatedSeries};
use proptest::prelude::*;

const CAP: usize = 2;
const ORDER: usize = 4;

fn series() -> impl Strategy<Value = TruncatedSeries> {
    prop::collection::vec((prop::array::uniform4(0u32..3), -5i64..=5), 0..6).prop_map(|terms| {
        let mut s = TruncatedSeries::zero(CAP, ORDER);
        for (e, c) in terms {
            s.add_term(Monomial::from_exponents(&e[..2], &e[2..]), rational(c));
        }
        s
    })
}

proptest! {
    #[test]
    fn multiplication_is_commutative_and_associative(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    }

    #[test]
    fn multiplication_distributes(a in series(), b in series(), c in series()) {
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn subtraction_inverts_addition(a in series(), b in series()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn stored_terms_respect_the_order(a in series(), b in series()) {
        let p = &a * &b;
        prop_assert!(p.terms().keys().all(|m| m.grade() <= ORDER));
        prop_assert!(p.terms().values().all(|c| *c != rational(0)));
    }

    #[test]
    fn leibniz_rule(a in series(), b in series(), k in 1..=CAP) {
        let lhs = (&a * &b).derivative_x(k);
        let rhs = &(&a.derivative_x(k) * &b) + &(&a * &b.derivative_x(k));
        prop_assert_eq!(lhs, rhs.truncate(ORDER - 1));
    }

    #[test]
    fn polynomials_print_and_parse_back(coeffs in prop::collection::vec(-4i64..=4, 4)) {
        let atoms = ["x_1", "y_2", "L_{-1}", "W_3"];
        let mut p = Poly::zero();
        for (c, name) in coeffs.iter().zip(atoms) {
            let term = Poly::parse(name).unwrap().mul(&Poly::parse("L_0 + 1").unwrap());
            p = p.add(&term.scale(&rational(*c)));
        }
        prop_assert_eq!(Poly::parse(&p.to_string()).unwrap(), p);
    }
}
