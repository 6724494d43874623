use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid set: {0}")]
    InvalidSet(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("carrier mismatch: {0}")]
    CarrierMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    /// A set-extended sum left the family of representable primitives.
    #[error("closure violation: {0}")]
    Closure(String),
    #[error("invalid structure: {0}")]
    Invalid(String),
    /// The answer depends on p-adic digits below the truncation depth.
    #[error("indeterminate below truncation: {0}")]
    Indeterminate(String),
    /// An inclusion that must hold by theorem was violated.
    #[error("structural violation: {0}")]
    Structural(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
