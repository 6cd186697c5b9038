use legendre_uniform::laurent::{LaurentPoly, Var};
use legendre_uniform::numerics::Complex;
use legendre_uniform::{Error, Real};
use proptest::prelude::*;

const P: u32 = 121;

fn poly_strategy() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-8i32..=8, -100.0f64..100.0), 1..8)
        .prop_map(|terms| LaurentPoly::from_f64(Var::Beta, P, &terms))
}

fn close(a: &LaurentPoly, b: &LaurentPoly) -> bool {
    a.rel_distance(b).to_f64() <= 1e-28
}

proptest! {
    #[test]
    fn addition_commutes(a in poly_strategy(), b in poly_strategy()) {
        prop_assert!(close(&a.add(&b).unwrap(), &b.add(&a).unwrap()));
    }

    #[test]
    fn multiplication_commutes(a in poly_strategy(), b in poly_strategy()) {
        prop_assert!(close(&a.multiply(&b).unwrap(), &b.multiply(&a).unwrap()));
    }

    #[test]
    fn multiplication_associates(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert!(close(&left, &right));
    }

    #[test]
    fn multiplication_distributes(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        let left = a.multiply(&b.add(&c).unwrap()).unwrap();
        let right = a.multiply(&b).unwrap().add(&a.multiply(&c).unwrap()).unwrap();
        prop_assert!(close(&left, &right));
    }

    #[test]
    fn derivative_of_antiderivative(a in poly_strategy()) {
        let no_residue = a.sub(&LaurentPoly::monomial(Var::Beta, -1, a.coeff(-1))).unwrap();
        if !no_residue.is_zero() {
            let back = no_residue.antiderivative().unwrap().differentiate();
            prop_assert!(close(&back, &no_residue));
        }
    }

    #[test]
    fn reciprocal_substitution_is_an_involution(a in poly_strategy()) {
        prop_assert!(close(&a.substitute_reciprocal().substitute_reciprocal(), &a));
    }

    #[test]
    fn evaluation_is_a_ring_map(a in poly_strategy(), b in poly_strategy(), x in 0.2f64..3.0, y in -2.0f64..2.0) {
        let z = Complex::new(Real::with_prec(P, x), Real::with_prec(P, y));
        let prod = a.multiply(&b).unwrap().evaluate(&z).unwrap();
        let direct = &a.evaluate(&z).unwrap() * &b.evaluate(&z).unwrap();
        let scale = a.abs_sum(&z.abs()) * b.abs_sum(&z.abs());
        prop_assert!(((&prod - &direct).abs() / scale).to_f64() <= 1e-30);
    }

    #[test]
    fn exact_division_recovers_factor(a in poly_strategy(), b in poly_strategy()) {
        let q = a.multiply(&b).unwrap().divide_exact(&b).unwrap();
        prop_assert!(close(&q, &a));
    }
}

#[test]
fn residue_is_rejected() {
    let p = LaurentPoly::from_f64(Var::Beta, P, &[(-1, 1.0), (2, 3.0)]);
    assert!(matches!(p.antiderivative(), Err(Error::ResidueTerm { .. })));
}

#[test]
fn mixed_variables_are_rejected() {
    let a = LaurentPoly::from_f64(Var::Beta, P, &[(1, 1.0)]);
    let b = LaurentPoly::from_f64(Var::BetaHat, P, &[(1, 1.0)]);
    assert_eq!(a.add(&b).unwrap_err(), Error::VarMismatch);
    assert_eq!(a.multiply(&b).unwrap_err(), Error::VarMismatch);
}
