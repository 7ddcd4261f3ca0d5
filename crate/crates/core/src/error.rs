use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {p}^{m} exceeds 2^32")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("no irreducible polynomial of degree {m} found over GF({p})")]
    NoIrreducible { p: u32, m: u32 },
    #[error("value {value} is not an element of GF({order})")]
    ElementOutOfRange { value: u64, order: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("no element of order {n}: {n} does not divide {group_order}")]
    NoRootOfUnity { n: u64, group_order: u64 },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("received word is inconsistent with every codeword")]
    InconsistentWord,
    #[error("invalid locality certificate: {0}")]
    InvalidCertificate(String),
    #[error("local repair failed for positions {positions:?}")]
    RepairFailed { positions: Vec<usize> },
    #[error("the zero code has no minimum distance")]
    NoNonzeroCodewords,
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("construction produced coefficients outside GF({0})")]
    CoefficientsOutsideSubfield(u64),
    #[error("malformed code file: {0}")]
    Format(String),
}

impl Error {
    pub(crate) fn params(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }

    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}
