//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by the analysis, construction, and simulation routines.
#[derive(Debug, Error)]
pub enum Error {
    /// Not enough disjoint sign patterns exist to build the requested
    /// family of alignment sets (the user count is too small for the
    /// requested tuple, or the seed is degenerate).
    #[error("insufficient sign patterns: {0}")]
    InsufficientPatterns(String),

    /// A scheme tuple violates its invariants, e.g. the alphabet
    /// cardinality is below `1 + sum(m_i - 1)`.
    #[error("invalid scheme tuple: {0}")]
    InvalidTuple(String),

    /// The linear system for the absorbing chain could not be solved.
    /// Only reachable if the model invariants were violated.
    #[error("singular linear system")]
    SingularSystem,

    /// The requested check does not apply to the given input.
    #[error("not applicable: {0}")]
    NotApplicable(String),

    /// Vector or matrix dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Time-sharing weights do not match the schemes they weight.
    #[error("weight mismatch: {0}")]
    WeightMismatch(String),

    /// The SINR lower bound is only available for alignment sets of
    /// size 2 and 4.
    #[error("unsupported alignment set size {0}")]
    UnsupportedSize(u32),

    /// A transmitted symbol exceeds the per-user power constraint.
    #[error("power violation: {0}")]
    PowerViolation(String),

    /// Malformed input that does not fit a more specific category.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
