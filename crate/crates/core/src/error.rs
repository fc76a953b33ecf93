use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("bit stream length {len} is not a multiple of {multiple}")]
    Length { len: usize, multiple: usize },

    #[error("bit at index {index} is {value}, expected 0 or 1")]
    InvalidBit { index: usize, value: u8 },

    #[error("invalid sample at index {index}: {reason}")]
    InvalidSample { index: usize, reason: &'static str },

    #[error("framing error: expected {expected} samples, got {actual}")]
    Framing { expected: usize, actual: usize },

    #[error("insufficient data: need at least {needed} samples, got {actual}")]
    InsufficientData { needed: usize, actual: usize },

    #[error("simulation budget of {budget} bits is below the required {required}")]
    InsufficientBudget { budget: u64, required: u64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
