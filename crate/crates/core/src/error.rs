use thiserror::Error;

pub type Result<T> = std::result::Result<T, AlgebraError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("operands live in different polynomial rings ({left} vs {right})")]
    RingMismatch { left: String, right: String },
    #[error("variable name `{0}` already present in the ring")]
    NameCollision(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime or is out of range (need p < 2^31)")]
    InvalidModulus(u64),
    #[error("monomial orders differ ({0} vs {1}); reduced bases are only canonical per order")]
    OrderMismatch(String, String),
    #[error("computation cancelled")]
    Cancelled,
    #[error("{element} is not in the ideal {ideal}")]
    NotInIdeal { element: String, ideal: String },
    #[error("the divisor element must be nonzero")]
    ZeroDivisorElement,
    #[error("an empty generator list is not allowed here")]
    EmptyGenerators,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
