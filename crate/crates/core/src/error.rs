use thiserror::Error;

/// Everything that can go wrong in the library.
///
/// Parse failures are kept distinct from algebra failures so front-ends can
/// map them to different exit codes (see [`Error::is_parse`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring context mismatch: {0} vs {1}")]
    ContextMismatch(String, String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("truncation mismatch: {0} vs {1}")]
    TruncationMismatch(u32, u32),
    #[error("{0} is not a unit")]
    NotAUnit(String),
    #[error("{0} is not a factor of {1}")]
    NotAFactor(String, String),
    #[error("empty monomial set")]
    EmptySet,
    #[error("degree {degree} exceeds truncation {trunc}")]
    TruncationExceeded { degree: u32, trunc: u32 },
    #[error("the zero series has no vertex")]
    VertexOfZero,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("formal map is not invertible: linear part has determinant {0}")]
    NotInvertible(String),
    #[error("component {0} has a nonzero constant term")]
    ConstantTerm(usize),
    #[error("coordinate {0} of the star tuple is not a unit series")]
    NotInK(usize),
    #[error("coefficient at offset degree {degree} lies beyond accuracy {accuracy}")]
    AccuracyExceeded { degree: u32, accuracy: u32 },
    #[error("{0} is not prime")]
    CompositeModulus(u64),
    #[error("unknown ring tag {0:?}")]
    UnknownRing(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("variable x{index} at byte {offset} is out of range for {dim} variables")]
    VariableOutOfRange {
        index: usize,
        offset: usize,
        dim: usize,
    },
    #[error("malformed input: {0}")]
    Format(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// True for errors caused by malformed text rather than by the algebra.
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::VariableOutOfRange { .. } | Error::Format(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
