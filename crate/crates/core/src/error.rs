use thiserror::Error;

/// Errors reported by this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violates a precondition (bad range, malformed input, ...).
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A request lies outside the data that was built (sieve too small, ...).
    #[error("out of range: {0}")]
    OutOfRange(String),

    /// A request would exceed a configured resource budget.
    #[error("resource limit: {0}")]
    ResourceLimit(String),

    /// The requested combination is rejected because the defining sum has
    /// infinitely many terms of constant size.
    #[error("divergent statistic: {0}")]
    Divergent(String),

    /// The combination is valid mathematically but not computable here.
    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    /// A cache or fixture file failed validation.
    #[error("malformed data: {0}")]
    MalformedData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
