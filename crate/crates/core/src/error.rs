use thiserror::Error;

/// Errors surfaced by every layer of the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a Cartan matrix: {0}")]
    NonCartan(String),
    #[error("not of finite type: Weyl group exceeds {cap} elements")]
    NotFiniteType { cap: usize },
    #[error("Weyl group has more than {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("polynomial arity mismatch: {left} vs {right} variables")]
    VarCountMismatch { left: usize, right: usize },
    #[error("polynomial degree {degree} exceeds the allowed {max}")]
    DegreeTooHigh { degree: u32, max: u32 },
    #[error("polynomial is not homogeneous of degree {expected}")]
    NotHomogeneous { expected: u32 },
    #[error("matrix is not strictly upper triangular")]
    NotStrictlyUpperTriangular,
    #[error("missing lower structure constant for element {element}")]
    MissingLowerConstant { element: usize },
    #[error("operation requires a {expected} table")]
    BasisMismatch { expected: &'static str },
    #[error("word of length {len} exceeds the limit {max}")]
    WordTooLong { len: usize, max: usize },
    #[error("Cartan matrix is not of type A")]
    NotTypeA,
    #[error("word {word} is not reduced")]
    NotReduced { word: String },
    #[error("integer {0} does not fit in 64 bits")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
