use thiserror::Error;

/// Errors raised by every operation in the crate.
///
/// The CLI maps these onto exit codes: hypothesis and precondition failures
/// exit with 2, budget exhaustion with 3 and internal assertion failures with 4.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("hypotheses failed: {}", .0.join("; "))]
    Hypothesis(Vec<String>),

    #[error("point lies on {0}")]
    PointOnLocus(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("internal assertion failed: {0}")]
    Assertion(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
