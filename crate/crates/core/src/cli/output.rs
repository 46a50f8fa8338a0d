//! JSON and CSV renderings. Exact values travel as `"a/b"` strings next to a
//! float `approx` field; CSV carries the approx values.

use serde::Serialize;

use crate::equidist::{ConvergenceReport, PositivityCertificate};
use crate::pascal::PascalProfile;
use crate::poly::ResidueVector;
use crate::scalar::{Mode, Scalar};

pub const SCHEMA: &str = "respoly/1";

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum NumValue {
    Exact(String),
    Float(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Num {
    pub value: NumValue,
    pub approx: f64,
}

impl Num {
    pub fn of<T: Scalar>(x: &T) -> Num {
        let approx = x.to_f64();
        let value = match T::MODE {
            Mode::Exact => NumValue::Exact(x.to_string()),
            Mode::Float => NumValue::Float(approx),
        };
        Num { value, approx }
    }
}

/// Shortest round-trip float text, shared by every CSV writer.
pub fn csv_float(x: f64) -> String {
    format!("{x:?}")
}

#[derive(Debug, Serialize)]
pub struct AnalyzeRow {
    pub n: u64,
    pub sums: Vec<Num>,
    pub max_dev: Num,
    pub bound: Option<Num>,
}

#[derive(Debug, Serialize)]
pub struct SubsequenceJson {
    pub offset: u64,
    pub stride: u64,
    pub indices: Vec<u64>,
    pub max_dev: Vec<Num>,
    pub bound: Vec<Num>,
}

#[derive(Debug, Serialize)]
pub struct AnalyzeJson {
    pub schema: &'static str,
    pub command: &'static str,
    pub mode: Mode,
    pub poly: String,
    pub scale: Num,
    pub d: usize,
    pub n_max: u64,
    pub tol: f64,
    pub m0: Option<u64>,
    pub lambda: Option<Num>,
    pub n_star: Option<u64>,
    pub nonconvergent: bool,
    pub rows: Vec<AnalyzeRow>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subsequences: Vec<SubsequenceJson>,
}

impl AnalyzeJson {
    pub fn new<T: Scalar>(poly: String, scale: &T, n_max: u64, report: &ConvergenceReport<T>) -> Self {
        let rows = report
            .sums
            .iter()
            .zip(&report.distances)
            .zip(&report.bound)
            .map(|((profile, dist), bound)| AnalyzeRow {
                n: profile.n,
                sums: profile.j_sums.iter().map(Num::of).collect(),
                max_dev: Num::of(dist),
                bound: bound.as_ref().map(Num::of),
            })
            .collect();
        let subsequences = report
            .subsequences
            .iter()
            .map(|s| SubsequenceJson {
                offset: s.offset,
                stride: s.stride,
                indices: s.indices.clone(),
                max_dev: s.distances.iter().map(Num::of).collect(),
                bound: s.bounds.iter().map(Num::of).collect(),
            })
            .collect();
        AnalyzeJson {
            schema: SCHEMA,
            command: "analyze",
            mode: T::MODE,
            poly,
            scale: Num::of(scale),
            d: report.d,
            n_max,
            tol: report.tol,
            m0: report.m0,
            lambda: report.lambda.as_ref().map(Num::of),
            n_star: report.n_star,
            nonconvergent: report.nonconvergent,
            rows,
            subsequences,
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n");
        for j in 0..self.d {
            out.push_str(&format!(",S_{j}"));
        }
        out.push_str(",max_dev,bound\n");
        for row in &self.rows {
            out.push_str(&row.n.to_string());
            for s in &row.sums {
                out.push(',');
                out.push_str(&csv_float(s.approx));
            }
            out.push(',');
            out.push_str(&csv_float(row.max_dev.approx));
            out.push(',');
            if let Some(b) = &row.bound {
                out.push_str(&csv_float(b.approx));
            }
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct PowerJson {
    pub schema: &'static str,
    pub command: &'static str,
    pub mode: Mode,
    pub method: String,
    pub poly: String,
    pub d: usize,
    pub n: u64,
    pub residue: Vec<Num>,
}

impl PowerJson {
    pub fn new<T: Scalar>(poly: String, method: String, n: u64, r: &ResidueVector<T>) -> Self {
        PowerJson {
            schema: SCHEMA,
            command: "power",
            mode: T::MODE,
            method,
            poly,
            d: r.d(),
            n,
            residue: r.coeffs().iter().map(Num::of).collect(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,value,approx\n");
        for (j, x) in self.residue.iter().enumerate() {
            let value = match &x.value {
                NumValue::Exact(s) => s.clone(),
                NumValue::Float(f) => csv_float(*f),
            };
            out.push_str(&format!("{j},{value},{}\n", csv_float(x.approx)));
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct CertificateJson {
    pub schema: &'static str,
    pub command: &'static str,
    pub poly: String,
    pub d: usize,
    pub found: bool,
    #[serde(flatten)]
    pub certificate: Option<PositivityCertificate>,
}

impl CertificateJson {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("found,k,l,h,threshold\n");
        match &self.certificate {
            Some(c) => out.push_str(&format!("true,{},{},{},{}\n", c.k, c.l, c.h, c.threshold)),
            None => out.push_str("false,,,,\n"),
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct PascalJson {
    pub schema: &'static str,
    pub command: &'static str,
    pub n: u64,
    pub d: usize,
    /// Decimal strings; the sums outgrow every fixed-width integer.
    pub sums: Vec<String>,
    pub ratios: Vec<Num>,
    pub deviation: f64,
}

impl PascalJson {
    pub fn new(p: &PascalProfile) -> Self {
        PascalJson {
            schema: SCHEMA,
            command: "pascal",
            n: p.n,
            d: p.d,
            sums: p.sums.iter().map(ToString::to_string).collect(),
            ratios: p.ratios.iter().map(Num::of).collect(),
            deviation: crate::scalar::rational_to_f64(&crate::pascal::exact_deviation(p)),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("j,sum,ratio,approx\n");
        for (j, (s, r)) in self.sums.iter().zip(&self.ratios).enumerate() {
            let ratio = match &r.value {
                NumValue::Exact(s) => s.clone(),
                NumValue::Float(f) => csv_float(*f),
            };
            out.push_str(&format!("{j},{s},{ratio},{}\n", csv_float(r.approx)));
        }
        out
    }
}
