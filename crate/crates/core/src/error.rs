use thiserror::Error;

/// Errors raised by recognizer construction and queries.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input: unknown letters, mismatched alphabets, missing representations.
    #[error("input error: {0}")]
    Input(String),
    /// A mathematical precondition of a construction does not hold.
    #[error("hypothesis violation: {0}")]
    Hypothesis(String),
    /// An invariant the library itself should have guaranteed was broken.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn hypothesis(msg: impl Into<String>) -> Self {
        Error::Hypothesis(msg.into())
    }

    pub fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Internal(_) => 2,
            Error::Hypothesis(_) => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
