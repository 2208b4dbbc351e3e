use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("bidegree mismatch in {name}: term {term} is not of bidegree ({d1},{d2})")]
    BidegreeMismatch { name: String, term: String, d1: u32, d2: u32 },

    #[error("all four coordinate polynomials are zero")]
    AllZero,

    #[error("{0} is not a prime below 2^62")]
    InvalidModulus(u64),

    #[error("a denominator vanishes modulo {0}")]
    DenominatorVanishes(u64),

    #[error("operands live over different coefficient fields")]
    FieldMismatch,

    #[error("operands use different variable sets")]
    VariableMismatch,

    #[error("polynomial division is not exact")]
    NotExact,

    #[error("omega needs equal bidegree components, got ({0},{1})")]
    UnequalBidegree(u32, u32),

    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("(0,0,0,0) is not a projective point")]
    ZeroPoint,

    #[error("every sampled maximal minor vanishes: the matrix is rank deficient")]
    AllMinorsZero,

    #[error("matrix has fewer columns ({cols}) than rows ({rows})")]
    TooFewColumns { rows: usize, cols: usize },

    #[error("no implicit equation of degree <= {0} found")]
    OracleFailed(u32),

    #[error("the implicit equation does not divide the determinant")]
    NotDivisible,

    #[error("modular interpolation failed: {0}")]
    Interpolation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
