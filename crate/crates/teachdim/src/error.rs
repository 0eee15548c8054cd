use thiserror::Error;

/// Errors surfaced by the library. `Invalid` covers precondition violations,
/// `Capacity` means a configured search cap was exceeded (result unknown, not
/// wrong), and `Construction` signals an internal invariant failure while
/// building a preference function.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    #[error("format error: {0}")]
    Format(String),
    #[error("unreachable target: {0}")]
    Unreachable(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub fn format(msg: impl Into<String>) -> Self {
        Error::Format(msg.into())
    }
}
