use thiserror::Error;

/// Errors raised by the algebra engine. Index fields are 0-based; messages
/// print them 1-based, matching variable names `x1, x2, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),

    #[error("ambient mismatch: {left} variables vs {right} variables")]
    AmbientMismatch { left: usize, right: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("not divisible")]
    NotDivisible,

    #[error("quotient exceeded {cap} terms")]
    TermCapExceeded { cap: usize },

    #[error("valuation of the zero element is undefined")]
    UndefinedValuation,

    #[error("invalid prime: {0}")]
    InvalidPrime(String),

    #[error("index {} out of range (valid indices are 1..={bound})", .index + 1)]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("index {} is frozen; only exchangeable indices can be mutated", .index + 1)]
    FrozenIndex { index: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("principal part is not skew-symmetrizable: {0}")]
    NotSymmetrizable(String),

    #[error("principal part is not skew-symmetric")]
    NotSkewSymmetric,

    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),

    #[error("exchangeable index {} is isolated; not allowed over a field", .index + 1)]
    IsolatedIndex { index: usize },

    #[error("not an exchange polynomial: {0}")]
    NotExchangeShape(String),

    #[error("oracle refused: {0}")]
    OracleRefused(String),

    #[error("starfish condition not established (rank {rank} < {n}); pass an explicit override to assert it")]
    StarfishNotEstablished { rank: usize, n: usize },

    #[error("element is not in the upper cluster algebra: {0}")]
    NotInUpper(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("internal consistency error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
