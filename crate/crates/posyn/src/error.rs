use std::io;
use std::path::PathBuf;
use std::time::Duration;

/// Process exit statuses of the command-line tool.
pub mod exit {
    pub const REALIZABLE: u8 = 0;
    pub const UNREALIZABLE: u8 = 1;
    /// Unreadable or malformed input, bad parameters, usage errors.
    pub const INPUT: u8 = 2;
    /// Timeout, explicit state budget or playout budget exhausted.
    pub const RESOURCE: u8 = 3;
    /// A strategy failed validation, or completed runs disagree.
    pub const CHECK: u8 = 4;
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {message}", path.display())]
    Input { path: PathBuf, message: String },
    #[error("timed out after {} s", .0.as_secs_f64())]
    Timeout(Duration),
    #[error(transparent)]
    Core(#[from] posyn_core::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Error {
        Error::Io { path: path.into(), source }
    }

    pub fn exit_code(&self) -> u8 {
        use posyn_core::Error as C;
        match self {
            Error::Timeout(_) | Error::Core(C::StateBudget(_) | C::PlayBudget(_) | C::Interrupted) => {
                exit::RESOURCE
            }
            _ => exit::INPUT,
        }
    }
}
