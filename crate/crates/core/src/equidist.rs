//! Eventual positivity of residue powers and convergence of strided sums.
//!
//! For a nonnegative polynomial `p` with `p(1) = 1`, the circulant built from
//! `r(p)` is doubly stochastic. Once some power `C^m0` is entrywise positive,
//! writing `C^m0 = lambda*J + (1 - lambda)*M0` with `lambda = d * min entry`
//! gives `||C^(m0*t) - J||_max <= (1 - lambda)^t`, so every strided sum
//! `S_j(n) = sum_{k = j mod d} (p^n)_k` tends to `1/d`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::circulant::{is_doubly_stochastic, DenseMatrix, SquareMatrix};
use crate::error::{Error, Result};
use crate::poly::{check_modulus, Polynomial, ResidueVector};
use crate::scalar::Scalar;

/// Float-mode tolerance for stochasticity checks.
pub const DEFAULT_STOCHASTIC_TOL: f64 = 1e-9;

/// Target for `max_j |S_j - 1/d|` when none is given.
pub const DEFAULT_CONVERGENCE_TOL: f64 = 1e-6;

/// Extra incremental steps the certificate search is allowed past `d`
/// before giving up (a coprime pair forces positivity by `d - 1`).
const THRESHOLD_SEARCH_SLACK: u64 = 1;

/// Witness that `r(p^n)` is entrywise positive from `threshold` on.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct PositivityCertificate {
    pub k: usize,
    pub l: usize,
    /// `l - k`, coprime to `d`.
    pub h: usize,
    /// First power whose residue is entrywise positive. Positivity persists
    /// for every larger power.
    pub threshold: u64,
}

/// Looks for positive residue entries `k < l` with `gcd(d, l - k) = 1`,
/// smallest `k` first, then smallest `l`. `None` when no such pair exists,
/// which does not rule out eventual positivity by some other route.
pub fn lemma1_certificate<T: Scalar>(
    p: &Polynomial<T>,
    d: usize,
) -> Result<Option<PositivityCertificate>> {
    check_modulus(d)?;
    require_nonnegative_nonzero(p)?;
    let r = p.residue(d)?;
    let support: Vec<usize> = (0..d).filter(|&j| r.coeffs()[j].is_positive()).collect();
    let pair = support.iter().enumerate().find_map(|(a, &k)| {
        support[a + 1..]
            .iter()
            .find(|&&l| (l - k).gcd(&d) == 1)
            .map(|&l| (k, l))
    });
    let Some((k, l)) = pair else {
        return Ok(None);
    };
    let threshold = first_positive_power(&r, d as u64 + THRESHOLD_SEARCH_SLACK)
        .expect("a coprime pair forces r(p^(d-1)) > 0");
    Ok(Some(PositivityCertificate {
        k,
        l,
        h: l - k,
        threshold,
    }))
}

/// Smallest `m` in `1..=max_power` with `r^m` entrywise positive.
pub fn first_positive_power<T: Scalar>(r: &ResidueVector<T>, max_power: u64) -> Option<u64> {
    positive_power(r, max_power).map(|(m, _)| m)
}

fn positive_power<T: Scalar>(
    r: &ResidueVector<T>,
    max_power: u64,
) -> Option<(u64, ResidueVector<T>)> {
    let mut cur = r.clone();
    for m in 1..=max_power {
        if cur.is_positive() {
            return Some((m, cur));
        }
        cur = cur.mul_mod(r).expect("same modulus");
    }
    None
}

/// Smallest power `m0 <= d` of `circ(r(p))` that is entrywise positive,
/// together with `r(p^m0)`.
pub fn mixing_power<T: Scalar>(
    p: &Polynomial<T>,
    d: usize,
) -> Result<Option<(u64, ResidueVector<T>)>> {
    Ok(positive_power(&p.residue(d)?, d as u64))
}

/// Expands `(1 + x^h)^(d-1)` by the binomial theorem, folds the exponents
/// `h*i` modulo `d` and reports whether all `d` residue classes are hit.
pub fn binomial_support_check(h: usize, d: usize) -> bool {
    if d < 2 || h == 0 || h >= d {
        return false;
    }
    let mut folded = vec![BigUint::zero(); d];
    let mut binom = BigUint::one();
    for i in 0..d {
        folded[(h * i) % d] += &binom;
        // C(d-1, i+1) = C(d-1, i) * (d-1-i) / (i+1)
        binom = binom * BigUint::from(d - 1 - i) / BigUint::from(i + 1);
    }
    folded.iter().all(|c| !c.is_zero())
}

/// `M = lambda*J + (1 - lambda)*M0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaDecomposition<T> {
    pub lambda: T,
    pub m0: DenseMatrix<T>,
    /// `M` was already `J`; then `lambda = 1` and `m0` is `J` too.
    pub special_case_j: bool,
}

impl<T: Scalar> LambdaDecomposition<T> {
    pub fn reconstruct(&self) -> DenseMatrix<T> {
        let d = self.m0.d();
        let j = DenseMatrix::averaging(d).scale(&self.lambda);
        let rest = self.m0.scale(&(T::one() - self.lambda.clone()));
        j.add(&rest).expect("same dimension")
    }

    /// `(1 - lambda)^n (M0^n - J) + J`, which equals `M^n`.
    pub fn power_identity(&self, n: u64) -> DenseMatrix<T> {
        let d = self.m0.d();
        let j = DenseMatrix::averaging(d);
        let factor = powu(T::one() - self.lambda.clone(), n);
        self.m0
            .pow(n)
            .sub(&j)
            .expect("same dimension")
            .scale(&factor)
            .add(&j)
            .expect("same dimension")
    }
}

/// Splits a positive doubly stochastic matrix with the largest admissible
/// `lambda`, namely `d` times its minimum entry.
pub fn lambda_decomposition<T: Scalar, M: SquareMatrix<T> + ?Sized>(
    m: &M,
) -> Result<LambdaDecomposition<T>> {
    let dense = m.to_dense();
    let d = dense.d();
    for (row, r) in dense.rows().enumerate() {
        if let Some(col) = r.iter().position(|x| !x.is_positive()) {
            return Err(Error::NotPositive { row, col });
        }
    }
    if !is_doubly_stochastic(&dense, DEFAULT_STOCHASTIC_TOL) {
        return Err(Error::NotDoublyStochastic);
    }
    let inv_d = T::one() / T::from_usize(d);
    let j = DenseMatrix::averaging(d);
    if dense
        .rows()
        .flatten()
        .all(|x| x.approx_eq(&inv_d, DEFAULT_STOCHASTIC_TOL))
    {
        return Ok(LambdaDecomposition {
            lambda: T::one(),
            m0: j,
            special_case_j: true,
        });
    }
    let lambda = T::from_usize(d) * dense.min_entry();
    let m0 = dense
        .sub(&j.scale(&lambda))
        .expect("same dimension")
        .scale(&(T::one() / (T::one() - lambda.clone())));
    debug_assert!(is_doubly_stochastic(&m0, 1e-6));
    Ok(LambdaDecomposition {
        lambda,
        m0,
        special_case_j: false,
    })
}

/// `(1 - lambda)^n`, an upper bound on `||M^n - J||_max`.
pub fn convergence_bound<T: Scalar>(lambda: &T, n: u64) -> Result<T> {
    if !lambda.is_positive() || *lambda > T::one() {
        return Err(Error::BadLambda(lambda.to_string()));
    }
    Ok(powu(T::one() - lambda.clone(), n))
}

pub(crate) fn powu<T: Scalar>(base: T, mut n: u64) -> T {
    let mut result = T::one();
    let mut b = base;
    while n > 0 {
        if n & 1 == 1 {
            result = result * b.clone();
        }
        n >>= 1;
        if n > 0 {
            b = b.clone() * b;
        }
    }
    result
}

/// Strided coefficient sums of one power of `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct StridedSumProfile<T> {
    pub d: usize,
    pub n: u64,
    /// Entry `j` is `sum_{k = j mod d} (p^n)_k`.
    pub j_sums: Vec<T>,
}

impl<T: Scalar> StridedSumProfile<T> {
    fn from_residue(n: u64, r: &ResidueVector<T>) -> Self {
        StridedSumProfile {
            d: r.d(),
            n,
            j_sums: r.coeffs().to_vec(),
        }
    }

    /// `max_j |S_j - 1/d|`.
    pub fn max_deviation(&self) -> T {
        let target = T::one() / T::from_usize(self.d);
        self.j_sums
            .iter()
            .map(|s| (s.clone() - target.clone()).abs())
            .fold(T::zero(), |m, x| if x > m { x } else { m })
    }
}

pub fn strided_sums<T: Scalar>(p: &Polynomial<T>, n: u64, d: usize) -> Result<StridedSumProfile<T>> {
    let r = crate::poly::pow_mod(p, n, d)?;
    Ok(StridedSumProfile::from_residue(n, &r))
}

/// One of the interleaved subsequences `m = stride*t + offset`.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsequenceTrace<T> {
    pub offset: u64,
    pub stride: u64,
    pub indices: Vec<u64>,
    pub distances: Vec<T>,
    /// `min(1, d * (1 - lambda)^t * ||C^offset||_max)`, with `lambda` taken
    /// from `C^stride`.
    pub bounds: Vec<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport<T> {
    pub d: usize,
    pub tol: f64,
    pub n_grid: Vec<u64>,
    pub sums: Vec<StridedSumProfile<T>>,
    /// `max_j |S_j(n) - 1/d|` for each `n` in the grid.
    pub distances: Vec<T>,
    /// First power of the circulant that is entrywise positive.
    pub m0: Option<u64>,
    pub lambda: Option<T>,
    /// `(1 - lambda)^floor(n / m0)` when `lambda` is known.
    pub bound: Vec<Option<T>>,
    /// First `n` with distance below `tol`.
    pub n_star: Option<u64>,
    /// No positive power within `d` steps and the tolerance was never met.
    /// Not a proof of divergence.
    pub nonconvergent: bool,
    /// Filled by [`corollary_check`] only.
    pub subsequences: Vec<SubsequenceTrace<T>>,
}

fn require_nonnegative_nonzero<T: Scalar>(p: &Polynomial<T>) -> Result<()> {
    if let Some(index) = p.first_negative() {
        return Err(Error::NotNonnegative { index });
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(())
}

fn require_stochastic<T: Scalar>(p: &Polynomial<T>) -> Result<()> {
    let sum = p.eval_at_one();
    if sum.approx_eq(&T::one(), DEFAULT_STOCHASTIC_TOL) {
        Ok(())
    } else {
        Err(Error::NotStochastic {
            sum: sum.to_string(),
        })
    }
}

/// Strided sums for `n = 1..=n_max` (one convolution per step), with the
/// `lambda` bound attached whenever a power `m0 <= d` of the circulant is
/// entrywise positive.
pub fn converge_trace<T: Scalar>(
    p: &Polynomial<T>,
    d: usize,
    n_max: u64,
    tol: f64,
) -> Result<ConvergenceReport<T>> {
    check_modulus(d)?;
    require_nonnegative_nonzero(p)?;
    if p.is_constant() {
        return Err(Error::ConstantPolynomial);
    }
    require_stochastic(p)?;

    let r = p.residue(d)?;
    let mixing = positive_power(&r, d as u64);
    let (m0, lambda) = match &mixing {
        Some((m, rm)) => {
            let lambda = match lambda_decomposition(&crate::circulant::CirculantMatrix::from_residue(rm)) {
                Ok(dec) => dec.lambda,
                // Float round-off can push column sums past the tolerance;
                // fall back to the defining formula.
                Err(_) => T::from_usize(d) * rm.min_entry(),
            };
            (Some(*m), Some(lambda))
        }
        None => (None, None),
    };

    let tol_t = T::from_f64(tol);
    let contraction = lambda.as_ref().map(|l| T::one() - l.clone());
    let mut report = ConvergenceReport {
        d,
        tol,
        n_grid: Vec::with_capacity(n_max as usize),
        sums: Vec::with_capacity(n_max as usize),
        distances: Vec::with_capacity(n_max as usize),
        m0,
        lambda,
        bound: Vec::with_capacity(n_max as usize),
        n_star: None,
        nonconvergent: false,
        subsequences: Vec::new(),
    };

    let mut cur = ResidueVector::identity(d)?;
    let mut bound = T::one();
    for n in 1..=n_max {
        cur = cur.mul_mod(&r)?;
        let profile = StridedSumProfile::from_residue(n, &cur);
        let dist = profile.max_deviation();
        if report.n_star.is_none() && dist < tol_t {
            report.n_star = Some(n);
        }
        let b = match (m0, &contraction) {
            (Some(m), Some(c)) => {
                if n % m == 0 {
                    bound = bound * c.clone();
                }
                Some(bound.clone())
            }
            _ => None,
        };
        report.n_grid.push(n);
        report.sums.push(profile);
        report.distances.push(dist);
        report.bound.push(b);
    }
    report.nonconvergent = report.m0.is_none() && report.n_star.is_none();
    Ok(report)
}

/// Convergence along the full sequence of powers for nonnegative `p` that
/// carries a positivity certificate, assembled from the `d - 1` interleaved
/// subsequences `m = (d-1)*t + i`. Uses [`DEFAULT_CONVERGENCE_TOL`].
pub fn corollary_check<T: Scalar>(
    p: &Polynomial<T>,
    d: usize,
    n_max: u64,
) -> Result<ConvergenceReport<T>> {
    corollary_check_with_tol(p, d, n_max, DEFAULT_CONVERGENCE_TOL)
}

pub fn corollary_check_with_tol<T: Scalar>(
    p: &Polynomial<T>,
    d: usize,
    n_max: u64,
    tol: f64,
) -> Result<ConvergenceReport<T>> {
    if lemma1_certificate(p, d)?.is_none() {
        return Err(Error::NoCertificate { d });
    }
    require_stochastic(p)?;
    let mut report = converge_trace(p, d, n_max, tol)?;

    let stride = (d - 1) as u64;
    let r = p.residue(d)?;
    let block = r.pow(stride);
    let lambda_block = T::from_usize(d) * block.min_entry();
    let contraction = T::one() - lambda_block;
    let d_t = T::from_usize(d);

    for offset in 0..stride {
        let offset_max = r
            .pow(offset)
            .coeffs()
            .iter()
            .fold(T::zero(), |m, x| if *x > m { x.clone() } else { m });
        let mut trace = SubsequenceTrace {
            offset,
            stride,
            indices: Vec::new(),
            distances: Vec::new(),
            bounds: Vec::new(),
        };
        let mut t = if offset == 0 { 1 } else { 0 };
        loop {
            let m = stride * t + offset;
            if m > n_max {
                break;
            }
            let raw = d_t.clone() * powu(contraction.clone(), t) * offset_max.clone();
            let bound = if raw > T::one() { T::one() } else { raw };
            trace.indices.push(m);
            trace.distances.push(report.distances[(m - 1) as usize].clone());
            trace.bounds.push(bound);
            t += 1;
        }
        report.subsequences.push(trace);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circulant::CirculantMatrix;
    use crate::scalar::Rational;
    use num_traits::Signed;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn poly(c: &[(i64, i64)]) -> Polynomial<Rational> {
        Polynomial::new(c.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
    }

    fn circ(c: &[(i64, i64)]) -> CirculantMatrix<Rational> {
        CirculantMatrix::new(c.iter().map(|&(n, d)| q(n, d)).collect()).unwrap()
    }

    #[test]
    fn certificate_examples() {
        let p = poly(&[(1, 2), (0, 1), (0, 1), (0, 1), (0, 1), (1, 2)]);
        let c = lemma1_certificate(&p, 4).unwrap().unwrap();
        assert_eq!((c.k, c.l, c.h), (0, 1, 1));

        assert_eq!(lemma1_certificate(&poly(&[(1, 1), (0, 1), (1, 1)]), 4).unwrap(), None);

        let p = poly(&[(1, 2), (0, 1), (1, 2)]);
        let c = lemma1_certificate(&p, 3).unwrap().unwrap();
        assert_eq!(c, PositivityCertificate { k: 0, l: 2, h: 2, threshold: 2 });
    }

    #[test]
    fn certificate_prefers_smallest_pair() {
        // support {0, 2, 3}, d = 6: (0,2) and (0,3) fail, (2,3) works
        let p = poly(&[(1, 3), (0, 1), (1, 3), (1, 3)]);
        let c = lemma1_certificate(&p, 6).unwrap().unwrap();
        assert_eq!((c.k, c.l), (2, 3));
    }

    #[test]
    fn certificate_errors() {
        assert_eq!(
            lemma1_certificate(&poly(&[(1, 1), (-1, 2)]), 3),
            Err(Error::NotNonnegative { index: 1 })
        );
        assert_eq!(lemma1_certificate(&poly(&[(0, 1)]), 3), Err(Error::ZeroPolynomial));
        assert_eq!(lemma1_certificate(&poly(&[(1, 1)]), 1), Err(Error::BadModulus(1)));
    }

    #[test]
    fn binomial_support_examples() {
        assert!(binomial_support_check(1, 5));
        assert!(!binomial_support_check(2, 4));
        assert!(binomial_support_check(3, 4));
        assert!(!binomial_support_check(0, 4));
        assert!(!binomial_support_check(4, 4));
    }

    #[test]
    fn lambda_decomposition_examples() {
        let m = circ(&[(1, 4), (1, 2), (1, 4)]);
        let dec = lambda_decomposition(&m).unwrap();
        assert_eq!(dec.lambda, q(3, 4));
        assert_eq!(dec.m0, circ(&[(0, 1), (1, 1), (0, 1)]).to_dense());
        assert!(!dec.special_case_j);
        assert_eq!(dec.reconstruct(), m.to_dense());

        let dec = lambda_decomposition(&circ(&[(1, 2), (1, 2)])).unwrap();
        assert!(dec.special_case_j);
        assert_eq!(dec.lambda, q(1, 1));

        assert_eq!(
            lambda_decomposition(&circ(&[(1, 2), (1, 2), (0, 1)])),
            Err(Error::NotPositive { row: 0, col: 2 })
        );
        let rows = DenseMatrix::from_rows(vec![
            vec![q(1, 2), q(1, 2)],
            vec![q(1, 4), q(3, 4)],
        ])
        .unwrap();
        assert_eq!(lambda_decomposition(&rows), Err(Error::NotDoublyStochastic));
    }

    #[test]
    fn power_identity_small() {
        let m = circ(&[(1, 4), (1, 2), (1, 4)]);
        let dec = lambda_decomposition(&m).unwrap();
        for n in 0..6 {
            assert_eq!(dec.power_identity(n), m.pow(n).to_dense());
        }
    }

    #[test]
    fn convergence_bound_examples() {
        assert_eq!(convergence_bound(&q(3, 4), 2).unwrap(), q(1, 16));
        assert_eq!(convergence_bound(&q(1, 1), 3).unwrap(), q(0, 1));
        assert_eq!(convergence_bound(&q(3, 4), 0).unwrap(), q(1, 1));
        assert!(matches!(convergence_bound(&q(0, 1), 1), Err(Error::BadLambda(_))));
        assert!(matches!(convergence_bound(&q(5, 4), 1), Err(Error::BadLambda(_))));

        // measured distance of the square stays under the bound
        let m = circ(&[(1, 4), (1, 2), (1, 4)]);
        let j = CirculantMatrix::averaging(3).unwrap();
        let dist = crate::circulant::max_norm_dist(&m.pow(2), &j).unwrap();
        assert_eq!(dist, q(1, 24));
        assert!(dist <= q(1, 16));
    }

    #[test]
    fn strided_sum_examples() {
        let h = poly(&[(1, 2), (1, 2)]);
        for n in 1..10 {
            assert_eq!(strided_sums(&h, n, 2).unwrap().j_sums, vec![q(1, 2), q(1, 2)]);
        }
        let s = strided_sums(&h, 4, 3).unwrap();
        assert_eq!(s.j_sums, vec![q(5, 16), q(5, 16), q(6, 16)]);
        assert_eq!(s.max_deviation(), q(1, 24));
        assert_eq!(strided_sums(&h, 0, 3).unwrap().j_sums, vec![q(1, 1), q(0, 1), q(0, 1)]);
    }

    #[test]
    fn trace_examples() {
        let u = poly(&[(1, 3), (1, 3), (1, 3)]);
        let rep = converge_trace(&u, 3, 5, 1e-12).unwrap();
        assert_eq!(rep.n_star, Some(1));
        assert_eq!(rep.lambda, Some(q(1, 1)));

        let h = poly(&[(1, 2), (1, 2)]);
        let rep = converge_trace(&h, 3, 20, 0.05).unwrap();
        assert_eq!(rep.n_star, Some(4));
        assert_eq!(rep.m0, Some(2));
        assert_eq!(rep.lambda, Some(q(3, 4)));
        assert_eq!(rep.distances[..4], [q(1, 3), q(1, 6), q(1, 12), q(1, 24)]);
        assert_eq!(rep.bound[0], Some(q(1, 1)));
        assert_eq!(rep.bound[1], Some(q(1, 4)));
        assert_eq!(rep.bound[3], Some(q(1, 16)));
        assert!(!rep.nonconvergent);

        assert_eq!(converge_trace(&poly(&[(1, 1)]), 3, 5, 0.1), Err(Error::ConstantPolynomial));
        assert!(matches!(
            converge_trace(&poly(&[(1, 1), (1, 1)]), 3, 5, 0.1),
            Err(Error::NotStochastic { .. })
        ));
    }

    #[test]
    fn trace_flags_obstructed_input() {
        let p = poly(&[(1, 2), (0, 1), (1, 2)]);
        let rep = converge_trace(&p, 4, 30, 1e-6).unwrap();
        assert!(rep.nonconvergent);
        assert!(rep.m0.is_none() && rep.lambda.is_none());
        assert!(rep.bound.iter().all(Option::is_none));
    }

    #[test]
    fn corollary_examples() {
        let p = poly(&[(1, 2), (0, 1), (1, 2)]);
        let rep = corollary_check(&p, 3, 40).unwrap();
        let last = rep.sums.last().unwrap();
        for s in &last.j_sums {
            assert!((s.clone() - q(1, 3)).abs() < Rational::from_f64(1e-6));
        }
        assert_eq!(rep.subsequences.len(), 2);
        let covered: usize = rep.subsequences.iter().map(|s| s.indices.len()).sum();
        assert_eq!(covered, 40);
        for s in &rep.subsequences {
            for (dist, b) in s.distances.iter().zip(&s.bounds) {
                assert!(dist <= b);
            }
        }

        let obstructed = poly(&[(1, 2), (0, 1), (1, 2)]);
        assert_eq!(corollary_check(&obstructed, 4, 50), Err(Error::NoCertificate { d: 4 }));
    }
}
