use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid dimension {0}: must be a multiple of 4 and at least 8")]
    InvalidDimension(u64),
    #[error("invalid middle index {0}: must be at least 2")]
    InvalidMiddleIndex(u64),
    #[error("undefined valuation: 2-adic order of zero")]
    UndefinedValuation,
    #[error("SU relations only computed for n = 4 mod 8 (middle index {0} is even)")]
    EvenMiddleIndex(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal assertion failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
