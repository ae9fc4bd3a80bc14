use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("degree mismatch: |nu| = {left}, |mu| = {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("condition violated: {0}")]
    ConditionViolation(String),

    #[error("parity violation: {0}")]
    ParityViolation(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    /// None of the known formulas or vanishing results applies.
    #[error("not computable: {0}")]
    NotComputable(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidInput(msg.into()))
}
