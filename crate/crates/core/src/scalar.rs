//! Coefficient fields.
//!
//! Every polynomial, residue vector and matrix in this crate is generic over a
//! [`Scalar`]. Two implementations exist: [`Rational`] (arbitrary precision,
//! the default) and `f64`. A container never mixes the two.

use std::fmt::{Debug, Display};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = num_rational::BigRational;

/// Numeric mode of a coefficient field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

impl Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

pub trait Scalar:
    Clone + PartialEq + PartialOrd + Debug + Display + Zero + One + Signed + Send + Sync + 'static
{
    const MODE: Mode;

    fn from_rational(r: &Rational) -> Self;

    /// Exact for rationals (`0.1` becomes 3602879701896397/36028797018963968).
    fn from_f64(x: f64) -> Self;

    fn to_f64(&self) -> f64;

    fn is_finite_value(&self) -> bool {
        true
    }

    fn from_usize(n: usize) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    /// Equality in exact mode, `|a - b| <= tol` in float mode.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool;

    /// Cyclic convolution `c[k] = sum_i a[i] * b[(k - i) mod d]` of two
    /// equal-length slices.
    fn cyclic_convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        debug_assert_eq!(a.len(), b.len());
        generic_convolve(a, b, a.len(), |k| k % a.len())
    }

    /// Ordinary polynomial product of two coefficient slices.
    fn linear_convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        generic_convolve(a, b, a.len() + b.len() - 1, |k| k)
    }

    /// Full expansion of `p^n` by `n` successive multiplications with `p`.
    fn expand_power(p: &[Self], n: u64) -> Vec<Self> {
        let mut acc = vec![Self::one()];
        for _ in 0..n {
            acc = Self::linear_convolve(&acc, p);
        }
        acc
    }
}

fn generic_convolve<T: Scalar>(a: &[T], b: &[T], len: usize, slot: impl Fn(usize) -> usize) -> Vec<T> {
    let mut out = vec![T::zero(); len];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let k = slot(i + j);
            out[k] = out[k].clone() + ai.clone() * bj.clone();
        }
    }
    out
}

/// Convolution over integer numerators with a single reduction per output
/// entry instead of one per product.
fn rational_convolve(
    a: &[Rational],
    b: &[Rational],
    len: usize,
    slot: impl Fn(usize) -> usize,
) -> Vec<Rational> {
    let (na, la) = common_denominator(a);
    let (nb, lb) = common_denominator(b);
    let mut acc = vec![BigInt::zero(); len];
    for (i, ai) in na.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in nb.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            acc[slot(i + j)] += ai * bj;
        }
    }
    let den = la * lb;
    acc.into_iter()
        .map(|n| Rational::new(n, den.clone()))
        .collect()
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn from_f64(x: f64) -> Self {
        Rational::from_float(x).unwrap_or_else(Rational::zero)
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }

    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn cyclic_convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        debug_assert_eq!(a.len(), b.len());
        let d = a.len();
        rational_convolve(a, b, d, |k| k % d)
    }

    fn linear_convolve(a: &[Self], b: &[Self]) -> Vec<Self> {
        rational_convolve(a, b, a.len() + b.len() - 1, |k| k)
    }

    // Integer numerators over L^n throughout, one reduction per coefficient
    // at the very end.
    fn expand_power(p: &[Self], n: u64) -> Vec<Self> {
        let (np, lp) = common_denominator(p);
        let mut acc = vec![BigInt::one()];
        for _ in 0..n {
            let mut next = vec![BigInt::zero(); acc.len() + np.len() - 1];
            for (i, a) in acc.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (j, b) in np.iter().enumerate() {
                    if !b.is_zero() {
                        next[i + j] += a * b;
                    }
                }
            }
            acc = next;
        }
        let den = num_traits::pow(lp, n as usize);
        acc.into_iter()
            .map(|c| Rational::new(c, den.clone()))
            .collect()
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }

    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn is_finite_value(&self) -> bool {
        self.is_finite()
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        (self - other).abs() <= tol
    }
}

fn common_denominator(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let nums = v
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    (nums, lcm)
}

/// Nearest-ish `f64` of a rational whose numerator and denominator may be far
/// outside the `f64` range (powers carry denominators like 2^1000000).
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let neg = r.numer().sign() == Sign::Minus;
    let num = r.numer().abs();
    let den = r.denom().clone();
    // Scale so the integer quotient carries 64 significant bits.
    let shift = num.bits() as i64 - den.bits() as i64 - 64;
    let q = if shift >= 0 {
        num / (den << shift as usize)
    } else {
        (num << (-shift) as usize) / den
    };
    let mag = q.to_f64().unwrap_or(f64::INFINITY) * 2f64.powi(shift.clamp(-1100, 1100) as i32);
    if neg {
        -mag
    } else {
        mag
    }
}

/// Parses a decimal literal ("0.25", "-3", "1.5e-2") or a fraction ("a/b")
/// into an exact rational. Decimals are scaled by powers of ten, never routed
/// through binary floating point.
pub fn parse_rational(token: &str) -> std::result::Result<Rational, String> {
    let t = token.trim();
    if t.is_empty() {
        return Err("empty coefficient".into());
    }
    if let Some((num, den)) = t.split_once('/') {
        let n = parse_decimal(num)?;
        let d = parse_decimal(den)?;
        if d.is_zero() {
            return Err("zero denominator".into());
        }
        return Ok(n / d);
    }
    parse_decimal(t)
}

fn parse_decimal(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i32 = s[pos + 1..]
                .parse()
                .map_err(|_| format!("bad exponent in {s:?}"))?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(format!("no digits in {s:?}"));
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(format!("not a number: {s:?}"));
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(digits.parse::<BigInt>().unwrap_or_default());
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Ok(if neg { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn decimals_are_exact() {
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), q(-3, 2));
        assert_eq!(parse_rational("1e-3").unwrap(), q(1, 1000));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("2/6").unwrap(), q(1, 3));
        assert_eq!(parse_rational("0.5/3").unwrap(), q(1, 6));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("-").is_err());
    }

    #[test]
    fn huge_rationals_convert_to_f64() {
        let big = BigInt::one() << 5000usize;
        let r = Rational::new(big.clone() + BigInt::one(), big * 3);
        assert!((rational_to_f64(&r) - 1.0 / 3.0).abs() < 1e-15);
        let tiny = Rational::new(BigInt::one(), BigInt::one() << 2000usize);
        assert_eq!(rational_to_f64(&tiny), 0.0);
        assert_eq!(rational_to_f64(&q(-7, 8)), -0.875);
    }

    #[test]
    fn exact_convolution_matches_generic_fold() {
        let a = vec![q(1, 2), q(0, 1), q(1, 3)];
        let b = vec![q(1, 5), q(2, 7), q(1, 1)];
        let mut expect = vec![Rational::zero(); 3];
        for i in 0..3 {
            for j in 0..3 {
                expect[(i + j) % 3] += &a[i] * &b[j];
            }
        }
        assert_eq!(Rational::cyclic_convolve(&a, &b), expect);
    }
}
