//! Dense univariate polynomials and their residues modulo x^d - 1.

use std::fmt;

use crate::error::{Error, Result};
use crate::guard;
use crate::scalar::Scalar;

/// Sign pattern of a polynomial's coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Zero,
    Nonnegative,
    Positive,
    MixedSign,
}

/// Polynomial with ascending-degree coefficients. Canonical on construction:
/// trailing zeros are dropped and the zero polynomial is stored as `[0]`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> Polynomial<T> {
    pub fn new(mut coeffs: Vec<T>) -> Result<Self> {
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite_value()) {
            return Err(Error::NonFinite { index });
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(T::zero());
        }
        if coeffs.len() == 1 && coeffs[0].is_zero() {
            // normalizes -0.0
            coeffs[0] = T::zero();
        }
        Ok(Polynomial { coeffs })
    }

    pub fn zero() -> Self {
        Polynomial {
            coeffs: vec![T::zero()],
        }
    }

    pub fn one() -> Self {
        Polynomial {
            coeffs: vec![T::one()],
        }
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of x^i, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// p(1), the sum of all coefficients.
    pub fn eval_at_one(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, c| acc + c.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        // Products of finite values stay finite unless they overflow, which
        // stochastic inputs never do.
        Polynomial::new(T::linear_convolve(&self.coeffs, &other.coeffs))
            .unwrap_or_else(|_| Polynomial::zero())
    }

    pub fn classify(&self) -> Classification {
        if self.is_zero() {
            return Classification::Zero;
        }
        if self.coeffs.iter().any(|c| c.is_negative()) {
            return Classification::MixedSign;
        }
        if self.coeffs.iter().all(|c| c.is_positive()) {
            Classification::Positive
        } else {
            Classification::Nonnegative
        }
    }

    /// Splits `p = p(1) * p'` where the coefficients of `p'` sum to one.
    pub fn normalize(&self) -> Result<(T, Polynomial<T>)> {
        let scale = self.eval_at_one();
        if scale.is_zero() {
            return Err(Error::ZeroSum);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.clone() / scale.clone())
            .collect();
        Ok((scale, Polynomial::new(coeffs)?))
    }

    pub fn residue(&self, d: usize) -> Result<ResidueVector<T>> {
        check_modulus(d)?;
        let mut out = vec![T::zero(); d];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i % d] = out[i % d].clone() + c.clone();
        }
        Ok(ResidueVector { coeffs: out })
    }

    /// Index of the first negative coefficient, if any.
    pub(crate) fn first_negative(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| c.is_negative())
    }
}

impl<T: Scalar> fmt::Display for Polynomial<T> {
    /// Comma-separated coefficients, the same form `parse_poly` accepts.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Coefficients of r(p), the remainder of p modulo x^d - 1. Always exactly
/// `d` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidueVector<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> ResidueVector<T> {
    pub fn new(coeffs: Vec<T>) -> Result<Self> {
        check_modulus(coeffs.len())?;
        if let Some(index) = coeffs.iter().position(|c| !c.is_finite_value()) {
            return Err(Error::NonFinite { index });
        }
        Ok(ResidueVector { coeffs })
    }

    /// The residue of the constant 1: `(1, 0, ..., 0)`.
    pub fn identity(d: usize) -> Result<Self> {
        check_modulus(d)?;
        let mut coeffs = vec![T::zero(); d];
        coeffs[0] = T::one();
        Ok(ResidueVector { coeffs })
    }

    pub fn d(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn sum(&self) -> T {
        self.coeffs.iter().fold(T::zero(), |acc, c| acc + c.clone())
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_positive())
    }

    pub fn min_entry(&self) -> T {
        self.coeffs
            .iter()
            .skip(1)
            .fold(self.coeffs[0].clone(), |m, c| if *c < m { c.clone() } else { m })
    }

    /// Product in R[x]/(x^d - 1).
    pub fn mul_mod(&self, other: &Self) -> Result<Self> {
        if self.d() != other.d() {
            return Err(Error::ModulusMismatch {
                left: self.d(),
                right: other.d(),
            });
        }
        Ok(ResidueVector {
            coeffs: T::cyclic_convolve(&self.coeffs, &other.coeffs),
        })
    }

    /// Square-and-multiply power; `n = 0` gives the identity residue.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut result = ResidueVector::identity(self.d()).expect("d >= 2 by construction");
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = ResidueVector {
                    coeffs: T::cyclic_convolve(&result.coeffs, &base.coeffs),
                };
            }
            n >>= 1;
            if n > 0 {
                base = ResidueVector {
                    coeffs: T::cyclic_convolve(&base.coeffs, &base.coeffs),
                };
            }
        }
        result
    }

    /// Largest `|self_j - other_j|`.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a.clone() - b.clone()).abs())
            .fold(T::zero(), |m, x| if x > m { x } else { m })
    }
}

pub(crate) fn check_modulus(d: usize) -> Result<()> {
    if d < 2 {
        Err(Error::BadModulus(d))
    } else {
        Ok(())
    }
}

pub fn classify<T: Scalar>(p: &Polynomial<T>) -> Classification {
    p.classify()
}

pub fn normalize<T: Scalar>(p: &Polynomial<T>) -> Result<(T, Polynomial<T>)> {
    p.normalize()
}

pub fn residue<T: Scalar>(p: &Polynomial<T>, d: usize) -> Result<ResidueVector<T>> {
    p.residue(d)
}

pub fn mul_mod<T: Scalar>(a: &ResidueVector<T>, b: &ResidueVector<T>) -> Result<ResidueVector<T>> {
    a.mul_mod(b)
}

/// r(p^n) through O(log n) cyclic convolutions on the residue.
pub fn pow_mod<T: Scalar>(p: &Polynomial<T>, n: u64, d: usize) -> Result<ResidueVector<T>> {
    Ok(p.residue(d)?.pow(n))
}

/// Expands p^n in full by repeated multiplication with p and reduces once at
/// the end. Refuses expansions above [`guard::NAIVE_TERM_LIMIT`] terms.
pub fn pow_mod_naive<T: Scalar>(p: &Polynomial<T>, n: u64, d: usize) -> Result<ResidueVector<T>> {
    check_modulus(d)?;
    let terms = (n as u128) * (p.degree() as u128) + 1;
    guard::check("naive expansion", terms, guard::NAIVE_TERM_LIMIT)?;
    Polynomial::new(T::expand_power(p.coeffs(), n))?.residue(d)
}
