use std::path::PathBuf;

use thiserror::Error;

/// Errors raised while configuring, running, or persisting a scenario.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("config file {path} could not be read: {source}")]
    ConfigIo {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("config file {path} failed to parse: {source}")]
    ConfigParse {
        path: PathBuf,
        source: toml::de::Error,
    },

    #[error("numerical invariant violated: {0}")]
    InvariantViolated(String),

    #[error("deflation exhausted the operator after {extracted} directions")]
    DeflationRankExceeded { extracted: usize },

    #[error(transparent)]
    Core(#[from] fspa_core::Error),

    #[error(transparent)]
    Data(#[from] fspa_core::DataError),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, HarnessError>;
