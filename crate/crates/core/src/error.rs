use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed token `{token}`: {reason}")]
    MalformedToken { token: String, reason: String },

    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },

    #[error("zero exponent in token `{0}`")]
    ZeroExponent(String),

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("word length {len} exceeds the limit of {limit} letters")]
    WordTooLong { len: usize, limit: usize },

    #[error("generator indices must differ (got i = j = {0})")]
    EqualIndices(usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("endomorphism must list {expected} images, found {found}")]
    ImageCount { expected: usize, found: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(BigInt),

    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),

    #[error("row {row} has {odd_count} odd entries; membership requires exactly one")]
    RowParity { row: usize, odd_count: usize },

    #[error("matrix is not in the commutant of {0}")]
    NotInCommutant(String),

    #[error("unknown identifier `{0}`")]
    UnknownId(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// An internally checked identity failed. Always a bug.
    #[error("internal check failed: {0}")]
    Internal(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}
