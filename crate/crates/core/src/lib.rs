//! Residue polynomials modulo `x^d - 1`, their circulant powers, and the
//! equidistribution of strided coefficient sums.
//!
//! The strided sums `S_j(n) = sum_{k = j mod d} (p^n)_k` of a stochastic
//! polynomial `p` are the entries of `r(p^n)`, the remainder of `p^n` modulo
//! `x^d - 1`, which is also the first row of `circ(r(p))^n`. This crate
//! computes them exactly, certifies when they become positive, and bounds how
//! fast they approach `1/d`.

pub mod circulant;
pub mod cli;
pub mod equidist;
pub mod error;
pub mod guard;
pub mod pascal;
pub mod poly;
pub mod scalar;

pub use circulant::{
    cyclic_permutation, dft_pow, is_doubly_stochastic, mat_mul, mat_pow, max_norm_dist,
    CirculantMatrix, DenseMatrix, SquareMatrix,
};
pub use equidist::{
    binomial_support_check, converge_trace, convergence_bound, corollary_check,
    lambda_decomposition, lemma1_certificate, mixing_power, strided_sums, ConvergenceReport,
    LambdaDecomposition, PositivityCertificate, StridedSumProfile, SubsequenceTrace,
};
pub use error::{Error, Result};
pub use pascal::{binomial_row, pascal_deviation, pascal_strided, PascalProfile, PascalRow};
pub use poly::{
    classify, mul_mod, normalize, pow_mod, pow_mod_naive, residue, Classification, Polynomial,
    ResidueVector,
};
pub use scalar::{Mode, Rational, Scalar};
