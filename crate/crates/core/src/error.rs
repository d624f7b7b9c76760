use thiserror::Error;

/// Errors raised by the algebra kernel and the verification engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown indeterminate `{0}`")]
    UnknownIndeterminate(String),

    #[error("indeterminate `{0}` has no value in the assignment")]
    UnassignedIndeterminate(&'static str),

    #[error("denominator vanishes at the requested point")]
    DenominatorVanishes,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid degree {0}")]
    InvalidDegree(i64),

    #[error("{0} of {1} samples hit vanishing denominators")]
    DegenerateSampleBudgetExceeded(usize, usize),

    #[error("relation `{0}` is not available in the {1} representation")]
    UnsupportedRepresentation(String, &'static str),

    #[error("exponent overflow in monomial arithmetic")]
    ExponentOverflow,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
