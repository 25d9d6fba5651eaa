use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("size {n} exceeds cap {cap}")]
    SizeExceeded { n: usize, cap: usize },

    #[error("degenerate spectrum: {0}")]
    DegenerateSpectrum(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("family mismatch: {0}")]
    FamilyMismatch(String),

    #[error("fit unreliable (r^2 = {r_squared:.4})")]
    FitUnreliable { r_squared: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("eigensolver failed: {0}")]
    Eigensolver(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
