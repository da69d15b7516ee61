use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A problem evaluator produced a non-finite value.
    #[error("evaluation error: {0}")]
    Evaluation(String),

    /// A caller broke a documented precondition.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// The evaluation budget has no evaluations left.
    #[error("evaluation budget exhausted after {used} evaluations")]
    BudgetExhausted { used: usize },

    #[error("configuration error: {0}")]
    Config(String),

    /// Hypervolume is only implemented for 2, 3 and 5 objectives.
    #[error("unsupported objective count: {0}")]
    UnsupportedDimension(usize),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::ContractViolation(msg.into())
}
