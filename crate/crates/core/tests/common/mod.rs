//! Seeded generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use respoly::{Polynomial, Rational};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn poly(c: &[(i64, i64)]) -> Polynomial<Rational> {
    Polynomial::new(c.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Signed rational coefficients, numerators in [-5, 5], denominators in [1, 6].
pub fn random_poly(rng: &mut impl Rng, max_degree: usize) -> Polynomial<Rational> {
    let len = rng.random_range(1..=max_degree + 1);
    let coeffs = (0..len)
        .map(|_| q(rng.random_range(-5..=5), rng.random_range(1..=6)))
        .collect();
    Polynomial::new(coeffs).unwrap()
}

/// Nonnegative integer weights in [1, max_weight], each zeroed with
/// probability `zero_prob`, normalized to sum 1. At least one weight is kept
/// and the result is nonconstant.
pub fn random_stochastic(
    rng: &mut impl Rng,
    len: usize,
    zero_prob: f64,
    max_weight: i64,
) -> Polynomial<Rational> {
    assert!(len >= 2);
    loop {
        let mut w: Vec<i64> = (0..len)
            .map(|_| {
                if rng.random_bool(zero_prob) {
                    0
                } else {
                    rng.random_range(1..=max_weight)
                }
            })
            .collect();
        if w[len - 1] == 0 {
            w[len - 1] = rng.random_range(1..=max_weight);
        }
        let total: i64 = w.iter().sum();
        let p = Polynomial::new(w.iter().map(|&x| q(x, total)).collect()).unwrap();
        if !p.is_constant() {
            return p;
        }
    }
}

/// C(n, k) through factorials, independent of the library's row recurrence.
pub fn binom_factorial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let fact = |m: u64| (1..=m).fold(BigUint::one(), |acc, i| acc * BigUint::from(i));
    fact(n) / (fact(k) * fact(n - k))
}

/// Rigorous enclosure of `r(p^n)` for a stochastic nonnegative residue:
/// every exact entry lies within `radius` of `mid`.
pub struct Enclosure {
    pub mid: Vec<Rational>,
    pub radius: Rational,
}

#[derive(Clone)]
struct FixedVec {
    /// Entry `j` is `vals[j] / 2^bits`, never above the exact value's
    /// neighbourhood by more than the tracked l1 error.
    vals: Vec<BigInt>,
    /// Upper bound on the l1 distance to the exact vector.
    err: Rational,
}

/// Square-and-multiply in `bits`-bit fixed point with floor rounding and a
/// running l1 error bound. For true stochastic `x`, `y` with approximations
/// of l1 norm at most 1: `|x*y - round(x~*y~)|_1 <= e_x + e_y + d * 2^-bits`.
pub fn certified_pow(r: &[Rational], n: u64, bits: usize) -> Enclosure {
    let d = r.len();
    let scale = BigInt::one() << bits;
    let ulp = Rational::new(BigInt::one(), scale.clone());
    let round_err = Rational::from_integer(BigInt::from(d)) * &ulp;

    let to_fixed = |x: &Rational| (x * Rational::from_integer(scale.clone())).floor().to_integer();
    let from_fixed = |v: &BigInt| Rational::new(v.clone(), scale.clone());

    let base_vals: Vec<BigInt> = r.iter().map(to_fixed).collect();
    let base_err: Rational = r
        .iter()
        .zip(&base_vals)
        .map(|(x, v)| (x - from_fixed(v)).abs())
        .sum();
    let mul = |a: &FixedVec, b: &FixedVec| -> FixedVec {
        let mut acc = vec![BigInt::zero(); d];
        for (i, x) in a.vals.iter().enumerate() {
            for (j, y) in b.vals.iter().enumerate() {
                acc[(i + j) % d] += x * y;
            }
        }
        let vals: Vec<BigInt> = acc.into_iter().map(|v| v >> bits).collect();
        let l1_a: Rational = a.vals.iter().map(|v| from_fixed(v).abs()).sum();
        // |(x - x~) * y|_1 + |x~ * (y - y~)|_1 with |y|_1 = 1
        let err = a.err.clone() + l1_a * &b.err + &round_err;
        FixedVec { vals, err }
    };

    let mut one = vec![BigInt::zero(); d];
    one[0] = scale.clone();
    let mut result = FixedVec {
        vals: one,
        err: Rational::zero(),
    };
    let mut base = FixedVec {
        vals: base_vals,
        err: base_err,
    };
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            result = mul(&result, &base);
        }
        k >>= 1;
        if k > 0 {
            base = mul(&base, &base);
        }
    }
    Enclosure {
        mid: result.vals.iter().map(from_fixed).collect(),
        radius: result.err,
    }
}

pub mod strategies {
    use proptest::prelude::*;
    use respoly::{Polynomial, Rational};

    use super::q;

    /// Signed rational polynomial with at most `max_len` coefficients.
    pub fn signed_poly(max_len: usize) -> impl Strategy<Value = Polynomial<Rational>> {
        prop::collection::vec((-5i64..=5, 1i64..=6), 1..=max_len)
            .prop_map(|c| Polynomial::new(c.into_iter().map(|(n, d)| q(n, d)).collect()).unwrap())
    }

    /// Nonconstant stochastic polynomial from integer weights in `[lo, 9]`.
    pub fn stochastic(lo: i64, max_len: usize) -> impl Strategy<Value = Polynomial<Rational>> {
        prop::collection::vec(lo..=9i64, 2..=max_len)
            .prop_filter("nonconstant, nonzero", |w| {
                w.iter().sum::<i64>() > 0 && w[1..].iter().any(|&x| x > 0)
            })
            .prop_map(|w| {
                let total: i64 = w.iter().sum();
                Polynomial::new(w.iter().map(|&x| q(x, total)).collect()).unwrap()
            })
    }
}
