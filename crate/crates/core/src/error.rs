use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("generator count mismatch: expected {expected}, found {found}")]
    GeneratorCount { expected: usize, found: usize },

    #[error("degree {requested} exceeds the configured maximum {max}")]
    DegreeCap { requested: usize, max: usize },

    #[error("element is not homogeneous")]
    NotHomogeneous,

    #[error("element is not a cocycle: its differential is {0}")]
    NotCocycle(String),

    #[error("unsupported prime {0}: primes must be at least 5")]
    InvalidPrime(u64),

    #[error("search space of {estimate} candidates exceeds the limit {limit}")]
    SearchSpace { estimate: f64, limit: f64 },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
