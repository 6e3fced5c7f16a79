use thiserror::Error;

/// Errors raised by the exact machinery. Most of them flag malformed input
/// (wrong degrees, non-monic or non-real polynomials) rather than internal
/// failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("polynomial is not totally real: {0}")]
    NotTotallyReal(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("congruence classes for order {n} modulo 2^{e} are incomplete ({found} of {target})")]
    IncompleteClasses {
        n: usize,
        e: u32,
        found: usize,
        target: usize,
    },
    #[error("counting lemma inapplicable: theta = {theta} exceeds d = {d}")]
    LemmaInapplicable { theta: usize, d: usize },
    #[error("order {0} is too large for exhaustive enumeration")]
    OrderTooLarge(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io: {0}")]
    Io(String),
}

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

pub type Result<T> = std::result::Result<T, Error>;
