mod common;

use num_bigint::BigUint;
use num_traits::One;
use proptest::prelude::*;
use respoly::{binomial_row, pascal_deviation, pascal_strided, pow_mod, Rational};

use common::{binom_factorial, poly};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rows_match_factorials(n in 0u64..=400) {
        let row = binomial_row(n).unwrap();
        prop_assert_eq!(row.entries.len() as u64, n + 1);
        for (k, c) in row.entries.iter().enumerate() {
            prop_assert_eq!(c, &binom_factorial(n, k as u64), "k = {}", k);
        }
        let total = row.entries.iter().fold(BigUint::ZERO, |a, b| a + b);
        prop_assert_eq!(total, BigUint::one() << n as usize);
    }

    #[test]
    fn folding_respects_row_symmetry(n in 0u64..=500, d in 2usize..=16) {
        let sums = pascal_strided(n, d).unwrap().sums;
        for j in 0..d {
            let mirror = (n as usize % d + d - j) % d;
            prop_assert_eq!(&sums[j], &sums[mirror], "j = {}", j);
        }
    }

    #[test]
    fn sums_are_scaled_strided_sums_of_the_halving_polynomial(n in 0u64..=300, d in 2usize..=16) {
        let sums = pascal_strided(n, d).unwrap().sums;
        let r = pow_mod(&poly(&[(1, 2), (1, 2)]), n, d).unwrap();
        let scale = Rational::from_integer(num_bigint::BigInt::one() << n as usize);
        for (s, x) in sums.iter().zip(r.coeffs()) {
            prop_assert_eq!(&Rational::from_integer(s.clone().into()), &(x * &scale));
        }
    }

    #[test]
    fn ratios_average_to_one(n in 0u64..=300, d in 2usize..=16) {
        let profile = pascal_strided(n, d).unwrap();
        let total = profile.ratios.iter().fold(Rational::from_integer(0.into()), |a, b| a + b);
        prop_assert_eq!(total, Rational::from_integer(d.into()));
    }
}

#[test]
fn deviation_shrinks_with_n() {
    for d in 3..=9 {
        assert!(pascal_deviation(200, d).unwrap() < pascal_deviation(20, d).unwrap(), "d = {d}");
    }
}

#[test]
fn oversized_rows_are_refused() {
    assert!(matches!(binomial_row(100_001), Err(respoly::Error::TooLarge { .. })));
}
