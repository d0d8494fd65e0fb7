use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot add surd values with different radicands: sqrt({0}) and sqrt({1})")]
    SurdMismatch(u64, u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("square root of negative value {0}")]
    NegativeRadicand(String),

    #[error("radicand {0} does not reduce to a machine-size squarefree integer")]
    RadicandTooLarge(String),

    #[error("series does not terminate: no numerator parameter is a nonpositive integer")]
    NonTerminating,

    #[error("denominator parameter {param} vanishes at term {term}")]
    DenominatorZero { param: String, term: usize },

    #[error("series did not converge within {0} terms")]
    TruncationLimit(usize),

    #[error("series evaluation overflowed (non-finite partial sum)")]
    NonFinite,

    #[error("hypergeometric series is not balanced")]
    NotBalanced,

    #[error("inconsistent results: {0}")]
    Mismatch(String),

    #[error("pole at x = {0}")]
    Pole(String),

    #[error("invalid index: {0}")]
    Index(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid piecewise polynomial: {0}")]
    Piecewise(String),

    #[error("signal error: {0}")]
    Signal(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
