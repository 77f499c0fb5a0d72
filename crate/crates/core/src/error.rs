use thiserror::Error;

/// Failure classes. The CLI maps them onto exit codes 2, 3 and 4.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("hypothesis failed: {0}")]
    Hypothesis(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub fn is_hypothesis(&self) -> bool {
        matches!(self, Error::Hypothesis(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

pub(crate) fn hypothesis(msg: impl Into<String>) -> Error {
    Error::Hypothesis(msg.into())
}

pub(crate) fn numerical(msg: impl Into<String>) -> Error {
    Error::Numerical(msg.into())
}
