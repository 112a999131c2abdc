use std::path::PathBuf;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A value violated a documented invariant (bad label, non-finite logit, T <= 0, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// Two inputs that must agree on the class count do not.
    #[error("class count mismatch: {context} has K={found}, expected K={expected}")]
    ClassCountMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    /// A file did not follow the documented grammar.
    #[error("{}: line {line}: {message}", path.display())]
    Format {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("serialization failed: {0}")]
    Serialize(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code for this error: 2 for anything caused by the caller's
    /// input, 1 for internal failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Serialize(_) => 1,
            _ => 2,
        }
    }
}
