use alloc::string::String;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("amplitude vector has zero norm")]
    ZeroVector,

    #[error("bad dimension: expected {expected}, got {got}")]
    BadDimension { expected: usize, got: usize },

    #[error("bad parameters: {0}")]
    BadParams(String),

    #[error("not a density matrix: {0}")]
    InvalidDensity(String),

    #[error("no sign change found for {0}")]
    NoRoot(&'static str),

    #[error("matrix columns are not orthonormal (deviation {0:e})")]
    NotIsometry(f64),

    #[error("state leaves span{{GHZ, W, W~}} (leakage {0:e})")]
    OutOfSpan(f64),

    #[error("empty input")]
    EmptyInput,
}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn bad_params(msg: impl Into<String>) -> Error {
    Error::BadParams(msg.into())
}
