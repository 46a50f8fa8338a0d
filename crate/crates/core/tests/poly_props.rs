mod common;

use num_traits::{One, Pow};
use proptest::prelude::*;
use respoly::{mul_mod, pow_mod, pow_mod_naive, residue, Polynomial, Rational, Scalar};

use common::strategies::{signed_poly, stochastic};

const FLOAT_EXACT_TOL: f64 = 1e-10;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn square_and_multiply_matches_naive(p in signed_poly(9), d in 2usize..=8, n in 0u64..=12) {
        prop_assert_eq!(pow_mod(&p, n, d).unwrap(), pow_mod_naive(&p, n, d).unwrap());
    }

    #[test]
    fn mass_is_conserved(p in signed_poly(9), d in 2usize..=8, n in 0u64..=12) {
        let r = pow_mod(&p, n, d).unwrap();
        prop_assert_eq!(r.sum(), Pow::pow(p.eval_at_one(), n as u32));
    }

    #[test]
    fn residue_is_a_ring_morphism(p in signed_poly(9), q in signed_poly(9), d in 2usize..=10) {
        let lhs = residue(&p.mul(&q), d).unwrap();
        let rhs = mul_mod(&residue(&p, d).unwrap(), &residue(&q, d).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn residue_preserves_the_value_at_one(p in signed_poly(12), d in 2usize..=10) {
        prop_assert_eq!(residue(&p, d).unwrap().sum(), p.eval_at_one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn float_mode_tracks_exact_mode(p in stochastic(0, 12), d in 2usize..=16, n in 0u64..=10_000) {
        let exact = pow_mod(&p, n, d).unwrap();
        let pf = Polynomial::new(p.coeffs().iter().map(Scalar::to_f64).collect()).unwrap();
        let float = pow_mod(&pf, n, d).unwrap();
        for (x, y) in exact.coeffs().iter().zip(float.coeffs()) {
            prop_assert!((x.to_f64() - y).abs() <= FLOAT_EXACT_TOL, "{} vs {}", x.to_f64(), y);
        }
    }
}

#[test]
fn zero_power_is_the_identity_residue() {
    let p = Polynomial::new(vec![Rational::one(), Rational::one()]).unwrap();
    for d in 2..=6 {
        let r = pow_mod(&p, 0, d).unwrap();
        assert_eq!(r.coeffs()[0], Rational::one());
        assert_eq!(r.sum(), Rational::one());
    }
}

#[test]
fn modulus_below_two_is_rejected() {
    let p = Polynomial::new(vec![Rational::one(), Rational::one()]).unwrap();
    for d in 0..2 {
        assert!(matches!(residue(&p, d), Err(respoly::Error::BadModulus(_))));
    }
}
