use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant onto a stable
/// exit code (see [`Error::exit_code`]).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("{0}")]
    Domain(String),

    /// A size cap (elements, oracle, field, search) was exceeded.
    #[error("{0}")]
    Resource(String),

    /// Malformed input file.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// Something that should be impossible happened.
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_) | Error::Parse { .. } => 2,
            Error::Resource(_) => 3,
            Error::Internal(_) => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
