use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("invalid field parameters: {0}")]
    InvalidField(String),
    #[error("modulus {0} is reducible over GF({1})")]
    ReducibleModulus(String, u32),
    #[error("modulus {0} is irreducible but its root is not a primitive element")]
    NonPrimitiveModulus(String),
    #[error("field elements belong to different fields")]
    FieldMismatch,
    #[error("polynomials belong to different skew-polynomial rings")]
    RingMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element value {0} out of range for a field of size {1}")]
    ElementOutOfRange(u32, u32),
    #[error("expected a word of length {expected}, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("polynomial {0} is not monic")]
    NotMonic(String),
    #[error("{divisor} is not a right divisor of {dividend}: remainder {remainder}")]
    NotRightDivisor {
        divisor: String,
        dividend: String,
        remainder: String,
    },
    #[error("h*g = {product} differs from {expected}")]
    NotFactorization { product: String, expected: String },
    #[error("constant coefficient of {0} is zero")]
    ZeroConstantTerm(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("search budget exceeded: {needed} candidates needed, cap is {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
