use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    // finite fields
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("field exponent must be at least 1")]
    ZeroExponent,
    #[error("field order {p}^{e} exceeds the cap of 65536")]
    FieldTooLarge { p: u32, e: u32 },
    #[error("element {0} is not in the field")]
    NotAnElement(u32),
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,

    // binary codes
    #[error("Reed-Muller order parameter m={0} outside 1..=16")]
    RmOutOfRange(u32),
    #[error("code length {0} outside the supported range")]
    LengthOutOfRange(usize),
    #[error("distance {d} must be below r/2 = {half}")]
    DistanceTooLarge { d: usize, half: f64 },
    #[error("initial code has minimum distance {actual} < design distance {d}")]
    InitialDistance { actual: usize, d: usize },
    #[error("budget exhausted after {attempts} candidates: reached dimension {best} of target {target}")]
    BudgetExhausted {
        attempts: u64,
        best: usize,
        target: usize,
    },
    #[error("dimension {0} too large for codeword enumeration (max 24)")]
    DimensionTooLarge(usize),
    #[error("code has no nonzero codewords")]
    EmptyCode,
    #[error("generator rows are linearly dependent")]
    DependentRows,
    #[error("code violates property {0}")]
    PropertyViolated(&'static str),

    // matrices and designs
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("enumeration budget exceeded: {needed} > {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    // analog codes
    #[error("parity-check matrix is zero")]
    ZeroMatrix,
    #[error("parity-check matrix has full column rank; no information positions")]
    NoInformation,
    #[error("vector is zero")]
    ZeroVector,
    #[error("decoder precondition violated: {0}")]
    Precondition(String),

    // io
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
