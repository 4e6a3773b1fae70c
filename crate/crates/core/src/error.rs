use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised by the solvers and the oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on the inputs was violated.
    #[error("usage error: {0}")]
    Usage(String),

    /// The exact result size exceeds the caller's cap.
    #[error("capacity exceeded: {count} solutions (cap {cap})")]
    Capacity { count: BigInt, cap: BigInt },

    /// A generated vector failed re-substitution. Always a solver bug.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
