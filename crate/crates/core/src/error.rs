use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported rank: {0}")]
    UnsupportedRank(String),
    #[error("invalid simple-root index: {0}")]
    BadSimpleIndex(String),
    #[error("not a root of this datum")]
    NotARoot,
    #[error("root does not lie in the unipotent radical")]
    NotInRadical,
    #[error("zero input where a nonzero value is required")]
    ZeroInput,
    #[error("insufficient p-adic precision: {0}")]
    InsufficientPrecision(String),
    #[error("pole of the local factor {0}")]
    Pole(String),
    #[error("convergence gate failed: {0}")]
    Convergence(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("malformed character data: {0}")]
    CharData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
