//! Error type shared by the whole library.
//!
//! Mathematical *failures* (an axiom that does not hold, a twist that is not
//! coassociative) are never errors — they are data, reported through
//! [`crate::report::Report`]. Errors are reserved for structural misuse:
//! mismatched dimensions, unresolved references, preconditions violated.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        found: usize,
    },

    #[error("field mismatch: {left} vs {right}")]
    FieldMismatch { left: String, right: String },

    #[error("space mismatch in {context}: {left} vs {right}")]
    SpaceMismatch {
        context: String,
        left: String,
        right: String,
    },

    #[error("{0} is not prime (or exceeds 2^31)")]
    NotPrime(u64),

    #[error("multiplication table is not a group: {0}")]
    NotAGroup(String),

    #[error("unsupported characteristic: {0}")]
    BadCharacteristic(String),

    #[error("the twisted coproduct admits no counit")]
    NoCounit,

    #[error("the twisted product admits no unit")]
    NoUnit,

    #[error("the map mu is not invertible")]
    MuNotInvertible,

    #[error("eta = (u_C (x) u_D) o Delta_Y is not invertible")]
    EtaNotInvertible,

    #[error("the unit element is not invertible in A (x) B^op")]
    ZNotOpInvertible,

    #[error("not a morphism: {0}")]
    NotMorphism(String),

    #[error("twist is not a comodule-category morphism: {0}")]
    NotInTw(String),

    #[error("not invertible: {0}")]
    NotInvertible(String),

    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    #[error("functional does not define an action: {0}")]
    NotAnAction(String),

    #[error("structure axiom failed: {0}")]
    AxiomFailure(String),

    #[error("theta is not a valid equivalence witness: {0}")]
    ThetaInvalid(String),

    #[error("search space of {needed} candidates exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error("validation error: {0}")]
    Validation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
