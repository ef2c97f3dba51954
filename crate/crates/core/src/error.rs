use alloc::string::String;

/// Errors raised by the winner-determination routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("index out of range: {what} {index} (limit {limit})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    /// Exhaustive search refused because the committee count exceeds the budget.
    #[error("{branch}: C({m}, {k}) = {committees} committees exceeds budget {budget}")]
    BudgetExceeded {
        branch: &'static str,
        m: usize,
        k: usize,
        committees: u128,
        budget: u128,
    },
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
