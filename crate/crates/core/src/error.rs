use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("non-canonical scalar: {0}")]
    NonCanonical(String),
    #[error("outside the supported domain: {0}")]
    Domain(String),
    #[error("invalid label: {0}")]
    InvalidLabel(String),
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),
    #[error("mismatched operands: {0}")]
    Mismatch(String),
    #[error("theory unavailable: {0}")]
    Unavailable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
