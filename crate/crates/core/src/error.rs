use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid field parameters: {0}")]
    Field(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} exceeds cap of {cap}")]
    CapExceeded { what: &'static str, cap: usize },

    #[error("not an automorphism group: generator {0} does not preserve the block multiset")]
    NotAutomorphism(usize),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
