use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("cannot evaluate a Laurent polynomial at v = 0")]
    ZeroEvaluationPoint,

    #[error("division by zero")]
    DivisionByZero,

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("index {index} out of range for {what} (allowed {min}..={max})")]
    IndexOutOfRange { what: &'static str, index: usize, min: usize, max: usize },

    #[error("resource limit: {what} requires n <= {cap}, got n = {n}")]
    ResourceLimit { what: &'static str, n: usize, cap: usize },

    #[error("element is not central")]
    NotCentral,

    #[error("nonzero residual after expressing element in the class basis")]
    NonzeroResidual,

    #[error("inconsistent linear system: {0}")]
    Inconsistent(String),

    #[error("value is not integral over the Laurent ring: {0}")]
    NonIntegral(String),

    #[error("mismatch: {0}")]
    Mismatch(String),

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("unknown statement id: {0}")]
    UnknownStatement(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Malformed(e.to_string())
    }
}

pub(crate) fn same_degree(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::DegreeMismatch { left, right })
    }
}
