use thiserror::Error;

use crate::poly::{Chart, Var};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("chart mismatch: {0} vs {1}")]
    ChartMismatch(Chart, Chart),

    #[error("variable {var} does not belong to chart {chart}")]
    UnknownVariable { var: Var, chart: Chart },

    #[error("exponent exceeds 255 in a single variable")]
    ExponentOverflow,

    #[error("expected {expected} substitution images, got {got}")]
    ImageCount { expected: usize, got: usize },

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("point is not on the unit sphere (|p|^2 = {0})")]
    NotNormalized(f64),

    #[error("direction must be a nonzero real vector: {0}")]
    InvalidDirection(String),

    #[error(
        "odd k = {0}: odd k-modes do not exist on S^3/I* because I* contains the antipodal map"
    )]
    OddK(u64),

    #[error(
        "degree l = {0} is not a sum 6a + 10b + 15c + 30d with a <= 4, b <= 2, c <= 1, so no invariant l-mode exists"
    )]
    InfeasibleDegree(u64),

    #[error("degenerate orbifold location: {0}")]
    DegenerateLocation(String),

    #[error("invalid orbifold configuration: {0}")]
    InvalidConfig(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Errors that stem from mathematically impossible requests rather than
    /// malformed input or I/O.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::OddK(_)
                | Error::InfeasibleDegree(_)
                | Error::DegenerateLocation(_)
                | Error::NotHomogeneous
                | Error::DivisionByZero
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
