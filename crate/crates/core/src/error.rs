use thiserror::Error;

/// Errors surfaced by the library. Three families: bad caller input, category
/// data missing a required block, and operations outside a function's domain.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("incomplete category data: {0}")]
    IncompleteData(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
