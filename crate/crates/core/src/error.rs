use thiserror::Error;

/// Errors raised by the numerical core and the file formats.
#[derive(Debug, Error)]
pub enum LabError {
    #[error("pole at s = {re} + {im}i")]
    Pole { re: f64, im: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("accuracy check failed: {0}")]
    Accuracy(String),

    #[error("solver failure: {0}")]
    Solver(String),

    #[error("integral diverges: {0}")]
    Divergence(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = LabError> = std::result::Result<T, E>;
