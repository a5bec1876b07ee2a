use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Model(#[from] twrc_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("target rate pair is infeasible")]
    Infeasible,
}

impl Error {
    /// Process exit status: 2 for bad input, 3 for an infeasible model, 4 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Model(_) | Error::Usage(_) | Error::Parse { .. } => 2,
            Error::Infeasible => 3,
            Error::Io { .. } => 4,
            Error::Csv { source, .. } => {
                if source.is_io_error() {
                    4
                } else {
                    2
                }
            }
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
