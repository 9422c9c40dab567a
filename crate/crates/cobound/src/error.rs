use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Incompatible matrix shapes for the requested operation.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// A parameter is outside the domain of the operation (p < 1, empty input, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative kernel ran out of its iteration budget.
    #[error("no convergence: {0}")]
    NoConvergence(String),

    /// The interior-point solver (and fallback, if enabled) failed to produce
    /// a solution meeting the requested tolerance.
    #[error("numerical failure in SDP solve: {0}")]
    SdpNumerical(String),

    /// The SDP was recognized as infeasible.
    #[error("SDP infeasible: {0}")]
    SdpInfeasible(String),

    /// A problem or object failed validation (non-Hermitian data, bad
    /// multiplication table, non-unitary representation, ...).
    #[error("validation failed: {0}")]
    Validation(String),

    /// Malformed text/JSON input.
    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
