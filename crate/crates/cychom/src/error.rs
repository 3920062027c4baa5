use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("invalid modulus n = {0}: the shift order must be at least 2")]
    InvalidModulus(u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("incompatible action: {0}")]
    IncompatibleAction(String),
    #[error("ring spec validation failed: {0}")]
    SpecValidation(String),
    #[error("out of range: {0}")]
    Range(String),
    #[error("ring too large: {size} elements exceeds cap {cap}")]
    TooLarge { size: u128, cap: usize },
    #[error("no inverse: {0}")]
    NoInverse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal consistency: {0}")]
    Inconsistency(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("spec file: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
