use thiserror::Error;

/// Errors reported by fallible operations across the crate.
///
/// Structural misuse (mixing scalars from different fields, mismatched
/// dimensions) is a programming error and panics instead.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid field modulus: {0}")]
    BadModulus(String),

    #[error("field size {0} exceeds the supported bound {1}")]
    FieldTooLarge(u64, u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("matrix is singular")]
    Singular,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("polynomial has zero constant term")]
    ZeroConstantTerm,

    #[error("zero polynomial")]
    ZeroPolynomial,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("census cap exceeded: {0}")]
    CapExceeded(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
