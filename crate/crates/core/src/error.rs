use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parts must be weakly decreasing: {0:?}")]
    NotAPartition(Vec<u32>),

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(u32, u32),

    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("partition {0:?} has a nonzero last part; subtract it before converting to a weight")]
    NonzeroLastPart(Vec<u32>),

    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at q=0: denominator has zero constant term")]
    PoleAtZero,

    #[error("expected a polynomial input, found twist {0}")]
    NotPolynomial(i64),

    #[error("coefficient is not a polynomial in q: {0}")]
    NonPolynomialCoefficient(String),

    #[error("zero norm while orthogonalising {0:?}")]
    ZeroNorm(Vec<u32>),

    #[error("inexact division: {0}")]
    InexactDivision(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("table for rank {rank} only reaches size {have}, size {need} requested")]
    TableTooSmall { rank: usize, have: u32, need: u32 },

    #[error("singular linear system: {0}")]
    Singular(String),

    #[error("negative or non-integral multiplicity: {0}")]
    NegativeMultiplicity(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
