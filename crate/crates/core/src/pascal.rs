//! Strided sums over rows of Pascal's triangle, in exact integers.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::guard;
use crate::poly::check_modulus;
use crate::scalar::{rational_to_f64, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PascalRow {
    pub n: u64,
    /// `C(n, 0), ..., C(n, n)`.
    pub entries: Vec<BigUint>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PascalProfile {
    pub n: u64,
    pub d: usize,
    /// `sums[j] = C(n, j) + C(n, j + d) + C(n, j + 2d) + ...`
    pub sums: Vec<BigUint>,
    /// `d * sums[j] / 2^n`; these average to exactly 1.
    pub ratios: Vec<Rational>,
}

/// Row `n` via `C(n, k+1) = C(n, k) * (n - k) / (k + 1)`; every division is
/// exact, and only the upper half is computed before mirroring.
pub fn binomial_row(n: u64) -> Result<PascalRow> {
    guard::check("pascal row", n as u128, guard::PASCAL_ROW_LIMIT)?;
    let len = n as usize + 1;
    let mut entries = Vec::with_capacity(len);
    let mut c = BigUint::one();
    for k in 0..=(n / 2) {
        entries.push(c.clone());
        c = c * BigUint::from(n - k) / BigUint::from(k + 1);
    }
    for k in (n / 2 + 1)..=n {
        let mirror = entries[(n - k) as usize].clone();
        entries.push(mirror);
    }
    Ok(PascalRow { n, entries })
}

pub fn pascal_strided(n: u64, d: usize) -> Result<PascalProfile> {
    check_modulus(d)?;
    let row = binomial_row(n)?;
    let mut sums = vec![BigUint::zero(); d];
    for (k, c) in row.entries.into_iter().enumerate() {
        sums[k % d] += c;
    }
    let total = BigInt::one() << n as usize;
    let ratios = sums
        .iter()
        .map(|s| Rational::new(BigInt::from(s.clone()) * BigInt::from(d), total.clone()))
        .collect();
    Ok(PascalProfile { n, d, sums, ratios })
}

/// `max_j |d * S_j / 2^n - 1|`, exact until the final conversion.
pub fn pascal_deviation(n: u64, d: usize) -> Result<f64> {
    Ok(rational_to_f64(&exact_deviation(&pascal_strided(n, d)?)))
}

pub fn exact_deviation(profile: &PascalProfile) -> Rational {
    let one = Rational::one();
    profile
        .ratios
        .iter()
        .map(|r| (r - &one).abs())
        .fold(Rational::zero(), |m, x| if x > m { x } else { m })
}
