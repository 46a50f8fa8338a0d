//! The `respoly` command-line front end.
//!
//! Exit codes: 0 on success (including a certificate search that finds
//! nothing), 1 when bench methods disagree, 2 on input errors, 4 when a size
//! guard trips.

mod bench;
mod output;
mod parse;

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use bench::{bench, BenchCell, BenchReport, BenchTiming, FLOAT_AGREEMENT_TOL};
pub use output::{csv_float, Num, NumValue, SCHEMA};
pub use parse::{parse_list, parse_poly};

use crate::equidist::{converge_trace, corollary_check_with_tol, lemma1_certificate};
use crate::error::{Error, Result};
use crate::pascal::pascal_strided;
use crate::poly::Polynomial;
use crate::scalar::{Mode, Rational, Scalar};
use output::{AnalyzeJson, CertificateJson, PascalJson, PowerJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Naive,
    Square,
    Dft,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Naive => "naive",
            Method::Square => "square",
            Method::Dft => "dft",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Exact,
    Float,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Analyze,
    Power,
    Certificate,
    Pascal,
    Bench,
}

/// Everything one invocation needs, independent of how it was parsed.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub poly_spec: String,
    /// A single modulus except for `bench`, which sweeps a grid.
    pub d: Vec<usize>,
    pub n: Vec<u64>,
    pub n_max: u64,
    pub mode: Mode,
    pub methods: Vec<Method>,
    pub tol: f64,
    pub format: Format,
    /// `analyze` only: also emit the interleaved subsequence traces.
    pub subsequences: bool,
    pub out: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(name = "respoly", version, about = "Residue polynomials modulo x^d - 1 and strided coefficient sums")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Trace max_j |S_j(n) - 1/d| for n = 1..n-max, with the lambda bound.
    Analyze(AnalyzeArgs),
    /// Compute r(p^n).
    Power(PowerArgs),
    /// Search for a coprime pair of positive residue indices.
    Certificate(CertificateArgs),
    /// Strided sums over row n of Pascal's triangle.
    Pascal(PascalArgs),
    /// Time naive, square-and-multiply and DFT powering over a grid.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, value_enum, default_value = "exact")]
    mode: ModeArg,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AnalyzeArgs {
    #[arg(long)]
    poly: String,
    #[arg(long = "mod")]
    d: usize,
    #[arg(long, default_value_t = 50)]
    n_max: u64,
    #[arg(long, default_value_t = crate::equidist::DEFAULT_CONVERGENCE_TOL)]
    tol: f64,
    /// Include the (d-1)-strided subsequence traces (needs a certificate).
    #[arg(long)]
    subsequences: bool,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct PowerArgs {
    #[arg(long)]
    poly: String,
    #[arg(long = "mod")]
    d: usize,
    #[arg(long)]
    n: u64,
    #[arg(long, value_enum, default_value = "square")]
    method: Method,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct CertificateArgs {
    #[arg(long)]
    poly: String,
    #[arg(long = "mod")]
    d: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct PascalArgs {
    #[arg(long)]
    n: u64,
    #[arg(long = "mod")]
    d: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long)]
    poly: String,
    /// Comma-separated moduli.
    #[arg(long = "mod")]
    d: String,
    /// Comma-separated exponents.
    #[arg(long)]
    n: String,
    /// Comma-separated methods; defaults to naive,square (plus dft in float mode).
    #[arg(long)]
    method: Option<String>,
    #[command(flatten)]
    common: Common,
}

fn input_error(reason: String) -> Error {
    Error::Parse {
        position: 0,
        token: String::new(),
        reason,
    }
}

impl RunConfig {
    /// Builds a config from command-line arguments (without the program name).
    pub fn from_args<I, S>(args: I) -> std::result::Result<RunConfig, clap::Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<std::ffi::OsString> + Clone,
    {
        let argv = std::iter::once(std::ffi::OsString::from("respoly"))
            .chain(args.into_iter().map(Into::into));
        let cli = Cli::try_parse_from(argv)?;
        Ok(match cli.command {
            Command::Analyze(a) => RunConfig {
                command: CommandKind::Analyze,
                poly_spec: a.poly,
                d: vec![a.d],
                n: Vec::new(),
                n_max: a.n_max,
                mode: a.common.mode.into(),
                methods: vec![Method::Square],
                tol: a.tol,
                format: a.common.format.unwrap_or(Format::Json),
                subsequences: a.subsequences,
                out: a.common.out,
            },
            Command::Power(a) => RunConfig {
                command: CommandKind::Power,
                poly_spec: a.poly,
                d: vec![a.d],
                n: vec![a.n],
                n_max: 0,
                mode: a.common.mode.into(),
                methods: vec![a.method],
                tol: 0.0,
                format: a.common.format.unwrap_or(Format::Json),
                subsequences: false,
                out: a.common.out,
            },
            Command::Certificate(a) => RunConfig {
                command: CommandKind::Certificate,
                poly_spec: a.poly,
                d: vec![a.d],
                n: Vec::new(),
                n_max: 0,
                mode: a.common.mode.into(),
                methods: Vec::new(),
                tol: 0.0,
                format: a.common.format.unwrap_or(Format::Json),
                subsequences: false,
                out: a.common.out,
            },
            Command::Pascal(a) => RunConfig {
                command: CommandKind::Pascal,
                poly_spec: String::new(),
                d: vec![a.d],
                n: vec![a.n],
                n_max: 0,
                mode: Mode::Exact,
                methods: Vec::new(),
                tol: 0.0,
                format: a.common.format.unwrap_or(Format::Json),
                subsequences: false,
                out: a.common.out,
            },
            Command::Bench(a) => {
                let mode: Mode = a.common.mode.into();
                let bad = |e: String| clap::Error::raw(clap::error::ErrorKind::ValueValidation, e + "\n");
                let methods = match &a.method {
                    Some(m) => m
                        .split(',')
                        .map(|t| Method::from_str(t.trim(), true).map_err(&bad))
                        .collect::<std::result::Result<Vec<_>, _>>()?,
                    None if mode == Mode::Float => vec![Method::Naive, Method::Square, Method::Dft],
                    None => vec![Method::Naive, Method::Square],
                };
                RunConfig {
                    command: CommandKind::Bench,
                    poly_spec: a.poly,
                    d: parse_list(&a.d, "modulus").map_err(bad)?,
                    n: parse_list(&a.n, "exponent").map_err(bad)?,
                    n_max: 0,
                    mode,
                    methods,
                    tol: FLOAT_AGREEMENT_TOL,
                    format: a.common.format.unwrap_or(Format::Csv),
                    subsequences: false,
                    out: a.common.out,
                }
            }
        })
    }

    fn single_d(&self) -> Result<usize> {
        self.d
            .first()
            .copied()
            .ok_or_else(|| input_error("missing --mod".into()))
    }

    fn single_n(&self) -> Result<u64> {
        self.n
            .first()
            .copied()
            .ok_or_else(|| input_error("missing --n".into()))
    }
}

fn render<S: Serialize>(value: &S, format: Format, csv: impl FnOnce(&S) -> String) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
            s.push('\n');
            s
        }
        Format::Csv => csv(value),
    }
}

/// Runs one command and returns the formatted output.
pub fn run(config: &RunConfig) -> Result<String> {
    match config.mode {
        Mode::Exact => run_in::<Rational>(config),
        Mode::Float => run_in::<f64>(config),
    }
}

fn run_in<T: Scalar>(config: &RunConfig) -> Result<String> {
    match config.command {
        CommandKind::Analyze => {
            let p: Polynomial<T> = parse_poly(&config.poly_spec)?;
            let d = config.single_d()?;
            let (scale, stochastic) = p.normalize()?;
            let report = if config.subsequences {
                corollary_check_with_tol(&stochastic, d, config.n_max, config.tol)?
            } else {
                converge_trace(&stochastic, d, config.n_max, config.tol)?
            };
            let json = AnalyzeJson::new(p.to_string(), &scale, config.n_max, &report);
            Ok(render(&json, config.format, AnalyzeJson::to_csv))
        }
        CommandKind::Power => {
            let p: Polynomial<T> = parse_poly(&config.poly_spec)?;
            let d = config.single_d()?;
            let n = config.single_n()?;
            let method = config.methods.first().copied().unwrap_or(Method::Square);
            let r = bench::evaluate(&p, n, d, method)?;
            let json = PowerJson::new(p.to_string(), method.to_string(), n, &r);
            Ok(render(&json, config.format, PowerJson::to_csv))
        }
        CommandKind::Certificate => {
            let p: Polynomial<T> = parse_poly(&config.poly_spec)?;
            let d = config.single_d()?;
            let certificate = lemma1_certificate(&p, d)?;
            let json = CertificateJson {
                schema: SCHEMA,
                command: "certificate",
                poly: p.to_string(),
                d,
                found: certificate.is_some(),
                certificate,
            };
            Ok(render(&json, config.format, CertificateJson::to_csv))
        }
        CommandKind::Pascal => {
            let profile = pascal_strided(config.single_n()?, config.single_d()?)?;
            let json = PascalJson::new(&profile);
            Ok(render(&json, config.format, PascalJson::to_csv))
        }
        CommandKind::Bench => {
            let p: Polynomial<T> = parse_poly(&config.poly_spec)?;
            let report = bench(&p, p.to_string(), &config.d, &config.n, &config.methods)?;
            Ok(render(&report, config.format, BenchReport::to_csv))
        }
    }
}

/// Parses `args`, runs, writes to stdout or `--out`, and returns the exit code.
pub fn main_with_args<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let config = match RunConfig::from_args(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&config) {
        Ok(text) => {
            let written = match &config.out {
                Some(path) => std::fs::write(path, text.as_bytes()),
                None => std::io::stdout().lock().write_all(text.as_bytes()),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("respoly: cannot write output: {e}");
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("respoly: {e}");
            e.exit_code()
        }
    }
}

pub fn main_from_env() -> i32 {
    main_with_args(std::env::args_os().skip(1))
}
