use thiserror::Error;

/// Errors produced by the library.
///
/// Statistical degeneracies (an estimator with a vanishing denominator, an
/// undefined transitivity) are not errors: they surface as `None` plus a
/// diagnostic flag on the report.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("edge budget exceeded: {required} pair slots needed, budget is {budget}")]
    EdgeBudgetExceeded { required: u64, budget: u64 },

    #[error("graph has {nodes} nodes, census cap is {cap}")]
    CensusCapExceeded { nodes: usize, cap: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("no defined values to summarize ({removed} undefined entries removed)")]
    EmptySummary { removed: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
