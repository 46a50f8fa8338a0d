use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(usize),

    #[error("residue vectors live modulo different polynomials (d = {left} vs d = {right})")]
    ModulusMismatch { left: usize, right: usize },

    #[error("matrix dimensions differ ({left}x{left} vs {right}x{right})")]
    DimensionMismatch { left: usize, right: usize },

    #[error("matrix is not square or has no rows")]
    NotSquare,

    #[error("coefficient {index} is not finite")]
    NonFinite { index: usize },

    #[error("coefficients sum to zero, normalization is undefined")]
    ZeroSum,

    #[error("polynomial has a negative coefficient at degree {index}")]
    NotNonnegative { index: usize },

    #[error("polynomial is zero")]
    ZeroPolynomial,

    #[error("polynomial is constant, its residues never spread over the classes mod d")]
    ConstantPolynomial,

    #[error("coefficients must sum to 1 (got {sum})")]
    NotStochastic { sum: String },

    #[error("matrix has a non-positive entry at ({row}, {col})")]
    NotPositive { row: usize, col: usize },

    #[error("matrix is not doubly stochastic")]
    NotDoublyStochastic,

    #[error("lambda must lie in (0, 1], got {0}")]
    BadLambda(String),

    #[error("no pair of positive residue indices with gcd(d, l - k) = 1 exists for d = {d}")]
    NoCertificate { d: usize },

    #[error("{what} needs {size} terms, above the guard of {limit} (set RESPOLY_GUARD_OVERRIDE=1 to lift)")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("method {method} is not available in {mode} mode")]
    MethodUnavailable { method: String, mode: String },

    #[error("methods disagree on r(p^{n}) modulo x^{d} - 1")]
    MethodDisagreement { d: usize, n: u64 },

    #[error("empty coefficient list")]
    EmptyInput,

    #[error("cannot parse token {position} ({token:?}): {reason}")]
    Parse {
        position: usize,
        token: String,
        reason: String,
    },
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::TooLarge { .. } => 4,
            Error::MethodDisagreement { .. } => 1,
            _ => 2,
        }
    }
}
