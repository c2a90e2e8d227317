use thiserror::Error;

/// Errors produced by parsing, weighting, solving and the exact oracle.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: vertex id {id} outside [1, {n}]")]
    VertexRange { line: usize, id: u64, n: usize },

    #[error("format error: {0}")]
    Format(String),

    #[error("validation error: {0}")]
    Validation(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("infeasible instance spec: {0}")]
    Spec(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("exact search exceeded node budget of {budget} (explored {explored})")]
    BudgetExceeded { budget: u64, explored: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
