use std::path::PathBuf;

use invsphere_core::Error as CoreError;

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// The input could not be parsed at all.
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },

    #[error("{0}")]
    Precondition(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}{source}")]
    Core {
        context: String,
        #[source]
        source: CoreError,
    },
}

impl CliError {
    pub fn parse(path: impl Into<PathBuf>, message: impl Into<String>) -> Self {
        Self::Parse {
            path: path.into(),
            message: message.into(),
        }
    }

    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    /// Core error raised while handling record `index` of an input file.
    pub fn record(index: usize, source: CoreError) -> Self {
        let relabeled = match source {
            CoreError::NonFinite { .. } => CoreError::NonFinite { index },
            CoreError::PointAtSouthPole { .. } => CoreError::PointAtSouthPole { index },
            CoreError::NotOnSphere { norm, .. } => CoreError::NotOnSphere { index, norm },
            CoreError::ZeroVector { .. } => CoreError::ZeroVector { index },
            other => {
                return Self::Core {
                    context: format!("record {index}: "),
                    source: other,
                }
            }
        };
        relabeled.into()
    }

    /// 1 for unparseable input, 3 for numeric singularities, 2 for the rest.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Parse { .. } => 1,
            Self::Core { source, .. } if source.is_singularity() => 3,
            _ => 2,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(source: CoreError) -> Self {
        Self::Core {
            context: String::new(),
            source,
        }
    }
}
