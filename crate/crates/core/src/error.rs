use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("input is empty")]
    EmptyInput,

    #[error("cannot index an empty block")]
    EmptyBlock,

    #[error("block of {len} bytes exceeds the {max}-byte limit of the index word")]
    BlockTooLarge { len: usize, max: usize },

    #[error("invalid option: {0}")]
    InvalidOption(String),

    #[error("malformed phrase #{index}: {reason}")]
    MalformedPhrase { index: usize, reason: String },

    #[error("malformed parse file: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
