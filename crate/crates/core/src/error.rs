use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("usage error: {0}")]
    Usage(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("shape mismatch in {context}: expected {expected}, got {actual}")]
    Shape {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("snapshot has {links} links but the state holds at most N_max = {n_max}")]
    Capacity { links: usize, n_max: usize },

    #[error("consistency error: {0}")]
    Consistency(String),

    #[error("invalid action: {0}")]
    Action(String),

    #[error("replay buffer holds {have} transitions, {need} requested")]
    InsufficientData { have: usize, need: usize },

    #[error("non-finite value during training: {0}")]
    Numeric(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("unsupported checkpoint version {found} (supported: {supported})")]
    UnsupportedVersion { found: u16, supported: u16 },

    #[error("missing model: {}", .0.display())]
    MissingModel(PathBuf),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status used by the command line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_) => 2,
            Error::Config(_) => 3,
            Error::Numeric(_) => 5,
            _ => 4,
        }
    }
}
