use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// `r - 3l` is negative or odd, so no Racah count exists.
    #[error("order {order} and rank {rank} do not describe a semi-simple algebra")]
    NotSemisimple { order: u64, rank: u64 },

    #[error("no target: {0}")]
    NoTarget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}
