//! Timing harness for the three ways of computing `r(p^n)`.
//!
//! Every grid cell is first evaluated by all requested methods and checked
//! for agreement; timings are only reported once the results agree.

use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use super::output::SCHEMA;
use super::Method;
use crate::circulant::dft_pow;
use crate::error::{Error, Result};
use crate::poly::{pow_mod, pow_mod_naive, Polynomial, ResidueVector};
use crate::scalar::{Mode, Scalar};

/// Cross-method tolerance in float mode.
pub const FLOAT_AGREEMENT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Serialize)]
pub struct BenchTiming {
    pub method: Method,
    pub nanos: u128,
    pub checksum: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchCell {
    pub d: usize,
    pub n: u64,
    pub timings: Vec<BenchTiming>,
    /// `agreement[a][b]`: methods `a` and `b` agree within mode tolerance.
    pub agreement: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchReport {
    pub schema: &'static str,
    pub command: &'static str,
    pub mode: Mode,
    pub poly: String,
    pub methods: Vec<Method>,
    pub grid: Vec<BenchCell>,
}

impl BenchReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d,n,method,mode,nanos,checksum,agree\n");
        for cell in &self.grid {
            let agree = cell.agreement.iter().flatten().all(|&a| a);
            for t in &cell.timings {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    cell.d, cell.n, t.method, self.mode, t.nanos, t.checksum, agree
                ));
            }
        }
        out
    }
}

fn checksum<T: Scalar>(r: &ResidueVector<T>) -> String {
    let text = r
        .coeffs()
        .iter()
        .map(|x| match T::MODE {
            Mode::Exact => x.to_string(),
            Mode::Float => format!("{:.12e}", x.to_f64()),
        })
        .collect::<Vec<_>>()
        .join(",");
    let digest = Sha256::digest(text.as_bytes());
    digest[..8].iter().map(|b| format!("{b:02x}")).collect()
}

pub(crate) fn evaluate<T: Scalar>(p: &Polynomial<T>, n: u64, d: usize, method: Method) -> Result<ResidueVector<T>> {
    match method {
        Method::Naive => pow_mod_naive(p, n, d),
        Method::Square => pow_mod(p, n, d),
        Method::Dft => {
            if T::MODE != Mode::Float {
                return Err(Error::MethodUnavailable {
                    method: method.to_string(),
                    mode: T::MODE.to_string(),
                });
            }
            let r = p.residue(d)?;
            let floats = ResidueVector::new(r.coeffs().iter().map(Scalar::to_f64).collect())?;
            let out = dft_pow(&floats, n);
            ResidueVector::new(out.coeffs().iter().map(|&x| T::from_f64(x)).collect())
        }
    }
}

pub fn bench<T: Scalar>(
    p: &Polynomial<T>,
    poly_text: String,
    ds: &[usize],
    ns: &[u64],
    methods: &[Method],
) -> Result<BenchReport> {
    if T::MODE == Mode::Exact && methods.contains(&Method::Dft) {
        return Err(Error::MethodUnavailable {
            method: Method::Dft.to_string(),
            mode: T::MODE.to_string(),
        });
    }
    let mut grid = Vec::new();
    for &d in ds {
        for &n in ns {
            let mut results = Vec::with_capacity(methods.len());
            let mut timings = Vec::with_capacity(methods.len());
            for &method in methods {
                let start = Instant::now();
                let r = evaluate(p, n, d, method)?;
                let nanos = start.elapsed().as_nanos();
                timings.push(BenchTiming {
                    method,
                    nanos,
                    checksum: checksum(&r),
                });
                results.push(r);
            }
            let agreement: Vec<Vec<bool>> = results
                .iter()
                .map(|a| {
                    results
                        .iter()
                        .map(|b| {
                            a.coeffs()
                                .iter()
                                .zip(b.coeffs())
                                .all(|(x, y)| x.approx_eq(y, FLOAT_AGREEMENT_TOL))
                        })
                        .collect()
                })
                .collect();
            if agreement.iter().flatten().any(|&ok| !ok) {
                return Err(Error::MethodDisagreement { d, n });
            }
            grid.push(BenchCell {
                d,
                n,
                timings,
                agreement,
            });
        }
    }
    Ok(BenchReport {
        schema: SCHEMA,
        command: "bench",
        mode: T::MODE,
        poly: poly_text,
        methods: methods.to_vec(),
        grid,
    })
}
