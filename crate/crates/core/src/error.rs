use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("requested tolerance {requested:e} is unreachable; best achievable estimate is {achievable:e}")]
    ToleranceUnreachable { requested: f64, achievable: f64 },

    #[error("bound `{bound}` is inapplicable: {reason}")]
    Inapplicable { bound: &'static str, reason: String },

    #[error("measure is not normalized: total mass {total}")]
    NotNormalized { total: f64 },

    #[error("tail series diverges at |z| = {radius}")]
    DivergentTail { radius: f64 },

    #[error("sieve size {requested} exceeds the memory budget of {budget}")]
    MemoryBudget { requested: u64, budget: u64 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
