//! Circulant and dense square matrices over a [`Scalar`].
//!
//! A circulant `circ(v)` has row `i` equal to `v` rotated right `i` times, so
//! `entry(i, j) = v[(j - i) mod d]`. Products and powers of circulants are
//! carried out on first rows only: the first row of `circ(a) * circ(b)` is the
//! cyclic convolution of `a` and `b`. Dense matrices exist for `J`, `U`, `M0`
//! and for cross-checking the circulant path.

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::poly::{check_modulus, ResidueVector};
use crate::scalar::Scalar;

/// Rotation `(v0, v1, ..., v_{d-1}) -> (v_{d-1}, v0, ..., v_{d-2})`.
pub fn cyclic_permutation<T: Clone>(v: &[T]) -> Vec<T> {
    let mut out = v.to_vec();
    out.rotate_right(1.min(v.len()));
    out
}

/// Read access shared by circulant and dense matrices.
pub trait SquareMatrix<T: Scalar> {
    fn dim(&self) -> usize;

    fn entry(&self, row: usize, col: usize) -> T;

    fn to_dense(&self) -> DenseMatrix<T> {
        let d = self.dim();
        let entries = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| self.entry(i, j))
            .collect();
        DenseMatrix { d, entries }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CirculantMatrix<T> {
    first_row: Vec<T>,
}

impl<T: Scalar> CirculantMatrix<T> {
    pub fn new(first_row: Vec<T>) -> Result<Self> {
        check_modulus(first_row.len())?;
        Ok(CirculantMatrix { first_row })
    }

    pub fn from_residue(v: &ResidueVector<T>) -> Self {
        CirculantMatrix {
            first_row: v.coeffs().to_vec(),
        }
    }

    pub fn identity(d: usize) -> Result<Self> {
        Ok(Self::from_residue(&ResidueVector::identity(d)?))
    }

    /// `J = U / d`, every entry `1/d`.
    pub fn averaging(d: usize) -> Result<Self> {
        check_modulus(d)?;
        let inv = T::one() / T::from_usize(d);
        Ok(CirculantMatrix {
            first_row: vec![inv; d],
        })
    }

    pub fn d(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[T] {
        &self.first_row
    }

    pub fn to_residue(&self) -> ResidueVector<T> {
        ResidueVector::new(self.first_row.clone()).expect("d >= 2 by construction")
    }

    /// Row `i`, i.e. the first row rotated `i` times.
    pub fn row(&self, i: usize) -> Vec<T> {
        let mut r = self.first_row.clone();
        r.rotate_right(i % self.d());
        r
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.d() != other.d() {
            return Err(Error::DimensionMismatch {
                left: self.d(),
                right: other.d(),
            });
        }
        Ok(CirculantMatrix {
            first_row: T::cyclic_convolve(&self.first_row, &other.first_row),
        })
    }

    pub fn pow(&self, n: u64) -> Self {
        Self::from_residue(&self.to_residue().pow(n))
    }
}

impl<T: Scalar> SquareMatrix<T> for CirculantMatrix<T> {
    fn dim(&self) -> usize {
        self.d()
    }

    fn entry(&self, row: usize, col: usize) -> T {
        let d = self.d();
        self.first_row[(col + d - row % d) % d].clone()
    }
}

/// Row-major `d x d` matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<T> {
    d: usize,
    entries: Vec<T>,
}

impl<T: Scalar> DenseMatrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let d = rows.len();
        if d == 0 || rows.iter().any(|r| r.len() != d) {
            return Err(Error::NotSquare);
        }
        Ok(DenseMatrix {
            d,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(d: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let entries = (0..d)
            .flat_map(|i| (0..d).map(move |j| (i, j)))
            .map(|(i, j)| f(i, j))
            .collect();
        DenseMatrix { d, entries }
    }

    pub fn identity(d: usize) -> Self {
        Self::from_fn(d, |i, j| if i == j { T::one() } else { T::zero() })
    }

    /// `U`, the all-ones matrix.
    pub fn ones(d: usize) -> Self {
        Self::from_fn(d, |_, _| T::one())
    }

    /// `J = U / d`.
    pub fn averaging(d: usize) -> Self {
        let inv = T::one() / T::from_usize(d);
        Self::from_fn(d, |_, _| inv.clone())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.d + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.d)
    }

    pub fn min_entry(&self) -> T {
        self.entries
            .iter()
            .skip(1)
            .fold(self.entries[0].clone(), |m, c| if *c < m { c.clone() } else { m })
    }

    pub fn scale(&self, s: &T) -> Self {
        DenseMatrix {
            d: self.d,
            entries: self.entries.iter().map(|x| x.clone() * s.clone()).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        self.same_dim(other)?;
        Ok(DenseMatrix {
            d: self.d,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            Err(Error::DimensionMismatch {
                left: self.d,
                right: other.d,
            })
        } else {
            Ok(())
        }
    }

    /// Schoolbook O(d^3) product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_dim(other)?;
        let d = self.d;
        let mut entries = vec![T::zero(); d * d];
        for i in 0..d {
            for k in 0..d {
                let a = &self.entries[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let e = &mut entries[i * d + j];
                    *e = e.clone() + a.clone() * other.entries[k * d + j].clone();
                }
            }
        }
        Ok(DenseMatrix { d, entries })
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut result = Self::identity(self.d);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base).expect("same dimension");
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base).expect("same dimension");
            }
        }
        result
    }

    /// True when every row is the cyclic rotation of the previous one.
    pub fn is_circulant(&self) -> bool {
        let first: Vec<T> = self.rows().next().map(<[T]>::to_vec).unwrap_or_default();
        let mut expect = first;
        self.rows().skip(1).all(|row| {
            expect = cyclic_permutation(&expect);
            row == expect.as_slice()
        })
    }
}

impl<T: Scalar> SquareMatrix<T> for DenseMatrix<T> {
    fn dim(&self) -> usize {
        self.d
    }

    fn entry(&self, row: usize, col: usize) -> T {
        self.get(row, col).clone()
    }

    fn to_dense(&self) -> DenseMatrix<T> {
        self.clone()
    }
}

/// Circulant product through the first-row convolution.
pub fn mat_mul<T: Scalar>(a: &CirculantMatrix<T>, b: &CirculantMatrix<T>) -> Result<CirculantMatrix<T>> {
    a.mul(b)
}

pub fn mat_pow<T: Scalar>(a: &CirculantMatrix<T>, n: u64) -> CirculantMatrix<T> {
    a.pow(n)
}

/// Nonnegative with unit row and column sums. `tol` only applies in float
/// mode; exact matrices are compared exactly.
pub fn is_doubly_stochastic<T: Scalar, M: SquareMatrix<T> + ?Sized>(m: &M, tol: f64) -> bool {
    let d = m.dim();
    let mut col_sums = vec![T::zero(); d];
    for i in 0..d {
        let mut row_sum = T::zero();
        for (j, col) in col_sums.iter_mut().enumerate() {
            let x = m.entry(i, j);
            if x.is_negative() {
                return false;
            }
            row_sum = row_sum + x.clone();
            *col = col.clone() + x;
        }
        if !row_sum.approx_eq(&T::one(), tol) {
            return false;
        }
    }
    col_sums.iter().all(|s| s.approx_eq(&T::one(), tol))
}

/// `max_ij |A_ij - B_ij|`.
pub fn max_norm_dist<T, A, B>(a: &A, b: &B) -> Result<T>
where
    T: Scalar,
    A: SquareMatrix<T> + ?Sized,
    B: SquareMatrix<T> + ?Sized,
{
    let d = a.dim();
    if d != b.dim() {
        return Err(Error::DimensionMismatch {
            left: d,
            right: b.dim(),
        });
    }
    let mut best = T::zero();
    for i in 0..d {
        for j in 0..d {
            let x = (a.entry(i, j) - b.entry(i, j)).abs();
            if x > best {
                best = x;
            }
        }
    }
    Ok(best)
}

/// Powers a circulant through its eigenvalues: forward DFT of the first row,
/// pointwise n-th power, inverse DFT, real part.
pub fn dft_pow(v: &ResidueVector<f64>, n: u64) -> ResidueVector<f64> {
    let d = v.d();
    if n == 0 {
        return ResidueVector::identity(d).expect("d >= 2 by construction");
    }
    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(d);
    let inverse = planner.plan_fft_inverse(d);

    let mut buf: Vec<Complex64> = v.coeffs().iter().map(|&x| Complex64::new(x, 0.0)).collect();
    forward.process(&mut buf);
    let exp = n as f64;
    for z in buf.iter_mut() {
        let (r, theta) = z.to_polar();
        // Polar form: phase error grows linearly in n.
        *z = if r == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            Complex64::from_polar(r.powf(exp), theta * exp)
        };
    }
    inverse.process(&mut buf);
    let scale = 1.0 / d as f64;
    let coeffs = buf.iter().map(|z| z.re * scale).collect();
    ResidueVector::new(coeffs).expect("finite for |eigenvalue| <= 1")
}
