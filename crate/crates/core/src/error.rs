use std::path::PathBuf;

use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parts must be weakly decreasing, found {prev} followed by {next}")]
    NonDecreasing { prev: u64, next: u64 },

    #[error("negative part {0}")]
    NegativePart(String),

    #[error("partition has {found} nonzero parts, at most {limit} allowed")]
    LengthExceeded { found: usize, limit: usize },

    #[error("cannot parse {0:?} as a part")]
    Parse(String),

    #[error("shape ({m},{n}) is not supported here (need m,n >= 2)")]
    UnsupportedShape { m: usize, n: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("partition sizes differ: |lambda|={lambda}, |mu|={mu}, |nu|={nu}")]
    SizeMismatch { lambda: u64, mu: u64, nu: u64 },

    #[error("partition length bound violated: {0}")]
    LengthBound(String),

    #[error("input too large for brute force: {0}")]
    TooLarge(String),

    #[error("resource guard tripped: {0}")]
    ResourceGuard(String),

    #[error("size {size} exceeds the oracle limit {limit}")]
    SizeLimit { size: u64, limit: u64 },

    #[error("{what} is not a partition: {parts:?}")]
    NotAPartition { what: &'static str, parts: Vec<i128> },

    #[error("replacement tallies disagree with the closed forms: {0}")]
    AccountingMismatch(String),

    #[error("matrix has a column that is zero or not allowed: {0}")]
    InvalidMatrix(String),

    #[error("arithmetic overflow in the count scalar")]
    Overflow,

    #[error("malformed cache file: {0}")]
    Format(String),

    #[error("cache was built for matrix {found}, expected {expected}")]
    CacheMismatch { expected: String, found: String },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// True for errors caused by configured limits rather than bad input.
    pub fn is_resource_guard(&self) -> bool {
        matches!(
            self,
            Error::TooLarge(_) | Error::ResourceGuard(_) | Error::SizeLimit { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
