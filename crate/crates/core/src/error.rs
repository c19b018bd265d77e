use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operator values decrease at position {0}")]
    NonMonotone(usize),
    #[error("value {value} out of range 0..={max}")]
    OutOfRange { value: i64, max: i64 },
    #[error("ordinal mismatch: expected [{expected}], found [{found}]")]
    Mismatch { expected: i64, found: i64 },
    #[error("operator is not injective")]
    NotInjective,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("unknown cell `{0}`")]
    UnknownCell(String),
    #[error("cell `{0}` is 0-dimensional and cannot be made thin")]
    ZeroDimensional(String),
    #[error("subsets live in different ambient sets")]
    AmbientMismatch,
    #[error("bad interval ({r}, {s}]")]
    BadInterval { r: usize, s: usize },
    #[error("object mismatch: {0}")]
    ObjectMismatch(String),
    #[error("law violation: {0}")]
    LawViolation(String),
    #[error("ill-formed category: {0}")]
    IllFormedCategory(String),
    #[error("ill-formed functor: {0}")]
    IllFormedFunctor(String),
    #[error("dimension {requested} exceeds cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("step {step}: {condition}")]
    StepViolation { step: usize, condition: String },
    #[error("unknown shape `{0}`")]
    UnknownShape(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("invalid stratified set: {0}")]
    InvalidSet(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
