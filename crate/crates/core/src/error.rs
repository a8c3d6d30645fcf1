use thiserror::Error;

/// Failures raised by the polynomial engine.
///
/// Every variant is a violated mathematical or structural precondition; none
/// of them is recoverable by retrying.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("weight is not integrable: parameter {index} is {value}, must be > -1")]
    NonIntegrableWeight { index: usize, value: String },

    #[error("quotient by the weight is not a polynomial: residual exponent {exponent}")]
    NonPolynomialQuotient { exponent: String },

    #[error("zero denominator: {0}")]
    ZeroDenominator(String),

    #[error("invalid face: {0}")]
    InvalidFace(String),

    #[error("invalid permutation or index set: {0}")]
    InvalidPermutation(String),

    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("linearly dependent input at position {0}")]
    DependentInput(usize),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors caused by malformed input rather than by a violated
    /// mathematical precondition.
    pub fn is_usage(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::InvalidArgument(_))
    }
}
