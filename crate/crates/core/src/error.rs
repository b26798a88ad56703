use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter violates an operation's precondition (`n < 2`, `m > n`, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The prime table is too small for the request.
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// The evaluation point is not a non-negative decimal below 2^63.
    #[error("domain error: {0}")]
    Domain(String),

    /// A sieve would need more bits than the configured budget allows.
    #[error("sieve of {requested} bits exceeds the budget of {budget} bits")]
    SieveBudget { requested: u64, budget: u64 },

    /// An internal consistency check failed.
    #[error("internal consistency violation: {0}")]
    Inconsistent(String),
}
