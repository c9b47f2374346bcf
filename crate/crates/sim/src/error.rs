use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Polar(#[from] polar_scl::Error),
    #[error("cannot write {path}: {source}")]
    Output {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot read records from {path}: {reason}")]
    Input { path: PathBuf, reason: String },
    #[error("SNR grids differ: {0}")]
    GridMismatch(String),
}

pub type Result<T> = std::result::Result<T, SimError>;
