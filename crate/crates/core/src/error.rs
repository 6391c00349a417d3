use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: expected {expected}, found {found}")]
    VariableCount { expected: usize, found: usize },

    #[error("monomials are incomparable: {0}")]
    Incomparable(String),

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },

    #[error("no spike of degree {d} in {k} variables")]
    NoSpike { k: usize, d: u32 },

    #[error("vector length {found} does not match ambient dimension {expected}")]
    Length { expected: usize, found: usize },

    #[error("monomial {monomial} has weight above the quotient weight {weight}")]
    WeightTooHigh { monomial: String, weight: String },

    #[error("invalid argument: {0}")]
    Invalid(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("fixture {name}, line {line}: {msg}")]
    Fixture {
        name: String,
        line: usize,
        msg: String,
    },

    #[error("cache error: {0}")]
    Cache(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
