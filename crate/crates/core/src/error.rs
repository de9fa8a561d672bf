use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid instance ({d1}, {d2}): {reason}")]
    InvalidInstance {
        d1: String,
        d2: String,
        reason: String,
    },

    #[error("invalid Lehmer parameters (a, c) = ({a}, {c}): {reason}")]
    InvalidLehmerParams { a: String, c: String, reason: String },

    /// The scan reached its Z bound without finding a representation. This is
    /// never a proof of non-existence.
    #[error("no least solution with Z <= {z_bound}")]
    NoLeastSolution { z_bound: u32 },

    #[error("internal consistency violation: {0}")]
    Inconsistent(String),
}

impl Error {
    pub(crate) fn arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
