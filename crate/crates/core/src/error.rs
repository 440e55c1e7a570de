use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation (mixed fields,
    /// mismatched rings, malformed input, ...).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    /// A computation would exceed a configured size bound.
    #[error("resource limit exceeded: {what} needs {needed}, bound is {bound}")]
    Resource { what: String, needed: u128, bound: u128 },

    /// Two independent routes disagreed. This means a bug, never bad input.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn inconsistency(msg: impl Into<String>) -> Self {
        Error::Inconsistency(msg.into())
    }

    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::DivisionByZero | Error::Parse { .. } => 1,
            Error::Resource { .. } => 2,
            Error::Inconsistency(_) => 3,
        }
    }
}
