use thiserror::Error;

/// Error type shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A caller-supplied value violates a documented precondition.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Input is numerically degenerate (rank deficient, zero rows, ...).
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Complement of a frame with N = d is the empty frame.
    #[error("no complement: {0}")]
    NoComplement(String),

    /// Catalog lookup failed.
    #[error("not found: {0}")]
    NotFound(String),

    /// A catalog construction failed its own validation; this is a bug.
    #[error("construction self-check failed: {0}")]
    Construction(String),

    /// A frame file could not be parsed. Lines are 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An iterative kernel did not reach its convergence contract.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// Every optimizer restart failed.
    #[error("optimizer failure: {0}")]
    OptimizerFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
