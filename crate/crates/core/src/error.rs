//! Error taxonomy shared by the whole engine.

use thiserror::Error;

/// Engine errors.
///
/// `Usage` marks a violated precondition on the caller's side, `Internal` a
/// broken invariant inside an oracle (these should never fire on valid
/// builds), and `Budget` a deliberately aborted Groebner run.
#[derive(Debug, Error)]
pub enum Error {
    #[error("usage: {0}")]
    Usage(String),
    #[error("internal fault: {0}")]
    Internal(String),
    #[error("pair budget exhausted after {spent} S-pairs (limit {limit}); raise MORAVA_PAIR_BUDGET")]
    Budget { spent: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
