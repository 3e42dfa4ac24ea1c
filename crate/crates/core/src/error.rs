use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed weight: {0}")]
    MalformedWeight(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field mismatch between weights or characters")]
    FieldMismatch,
    #[error("weight is not pure")]
    NotPure,
    #[error("character variant mismatch")]
    VariantMismatch,
    #[error("character is not of finite order")]
    NotFiniteOrder,
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("invalid sign choice: {0}")]
    InvalidEpsilon(String),
    #[error("not balanced at j = {0}")]
    NotBalanced(i64),
    #[error("discrete series parameters must satisfy a - b a nonzero integer")]
    DegenerateDiscrete,
    #[error("evaluation point {0} is within 0.1 of a pole")]
    PoleProximity(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("{0} is not coprime to {1}")]
    NotCoprime(i64, u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error: {0}")]
    Parse(String),
}
