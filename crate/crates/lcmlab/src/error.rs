use std::path::PathBuf;

use lcmlab_core::GroupError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Usage(String),
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("{}:{line}: {message}", path.display())]
    Format {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("{context}: {source}")]
    Group {
        context: String,
        source: GroupError,
    },
}

impl From<GroupError> for Error {
    fn from(source: GroupError) -> Self {
        Error::Group {
            context: "group computation".into(),
            source,
        }
    }
}

impl Error {
    /// Process exit code: 2 for usage and parse errors, 3 for data errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) | Error::Syntax { .. } => 2,
            Error::Group {
                source: GroupError::Parameter(_),
                ..
            } => 2,
            _ => 3,
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub fn group(context: impl Into<String>, source: GroupError) -> Self {
        Error::Group {
            context: context.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
