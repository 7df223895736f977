use thiserror::Error;

/// Errors produced by the geometry kernel, the profile machinery, the PDE
/// solvers and the report layer.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid body: {0}")]
    InvalidBody(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("refinement needed: {0}")]
    RefinementNeeded(String),

    #[error("profile invariant violated: {0}")]
    ProfileInvariant(String),

    #[error("solver did not converge: {0}")]
    NonConvergence(String),

    #[error("io: {0}")]
    Io(String),

    #[error("parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
