//! Exact root systems, finite reflection groups, and the combinatorics of
//! inversion complete families: constructions, verification, exhaustive
//! search for the maximum size of a minimal inversion complete set, and
//! abelian/strongly-abelian subset statistics.

pub mod abelian;
pub mod completeness;
pub mod coxeter;
pub mod families;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod search;
pub mod sets;

pub use scalar::{NumberField, Rational, Scalar};
pub use sets::RootSet;

/// Library-level error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid type: {0}")]
    InvalidType(String),
    #[error("unsupported type for this operation: {0}")]
    UnsupportedType(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("set is not biclosed")]
    NotBiclosed,
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("family is not minimal inversion complete: {0}")]
    NotMinimalComplete(String),
    #[error("duplicate family member at position {0}")]
    DuplicateMember(usize),
    #[error("instance too large: {0}")]
    InstanceTooLarge(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
