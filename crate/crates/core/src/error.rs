use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singularity: {0}")]
    Singular(String),
    #[error("truncation mismatch: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },
    #[error("invalid power: {0}")]
    InvalidPower(String),
    #[error("operator not certified power-bounded: {0}")]
    NotCertified(String),
    #[error("divergence detected: {0}")]
    Divergence(String),
    #[error("series did not converge: {0}")]
    NonConvergence(String),
    #[error("ill-conditioned eigenbasis (condition number {0:e})")]
    IllConditioned(f64),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency error: {0}")]
    Internal(String),
    #[error("not found: {0}")]
    NotFound(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no alignment: {0}")]
    NoAlignment(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("network error: {0}")]
    Network(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
