use thiserror::Error;

/// Failure modes of the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the function.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter violates a type invariant.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Truncated Fock space too small for the requested state.
    #[error("truncation leakage {leak:e} exceeds {threshold:e} at dimension {dim}")]
    Truncation { leak: f64, threshold: f64, dim: usize },

    /// Closed form is not available for this combination of inputs.
    #[error("unsupported case: {0}")]
    Unsupported(String),

    /// A closed form produced an internally inconsistent value.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
