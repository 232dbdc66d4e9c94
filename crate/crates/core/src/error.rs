use thiserror::Error;

/// Errors reported by the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid divisor: {0}")]
    InvalidDivisor(String),
    #[error("the zero function has no valuation")]
    ZeroFunction,
    #[error("local expansion exceeded the precision cap of {0} terms")]
    PrecisionCap(usize),
    #[error("function is not in the Riemann-Roch space: {0}")]
    NotInSpace(String),
    #[error("divisor has nonzero degree {0}")]
    NonzeroDegree(i64),
    #[error("invalid extension datum: {0}")]
    InvalidDatum(String),
    #[error("incompatible spaces: {0}")]
    Incompatible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("operation requires a finite base field or an explicit domain")]
    InfiniteField,
    #[error(
        "no semi-stable class found in the box |n_i| <= {bound} ({examined} classes examined)"
    )]
    SearchExhausted { bound: usize, examined: u64 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;
