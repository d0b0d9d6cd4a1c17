use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Caller passed arguments outside an operation's domain.
    #[error("usage error: {0}")]
    Usage(String),
    /// A mathematical invariant failed; always a bug, never bad input.
    #[error("internal invariant violated: {0}")]
    Internal(String),
    /// Embedded data or a cache file failed its integrity check.
    #[error("data corruption: {0}")]
    Corrupt(String),
    /// Computed results disagree with reference tables.
    #[error("verification mismatch: {0}")]
    Mismatch(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn usage(msg: impl Into<String>) -> Error {
    Error::Usage(msg.into())
}

pub(crate) fn internal(msg: impl Into<String>) -> Error {
    Error::Internal(msg.into())
}
