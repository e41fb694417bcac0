//! Crate-wide error type.

use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("point {x} lies outside the domain [0, {b}]")]
    OutOfDomain { x: Box<Scalar>, b: Box<Scalar> },

    #[error("interval bounds are reversed: {lo} > {hi}")]
    ReversedBounds { lo: Box<Scalar>, hi: Box<Scalar> },

    #[error("degenerate interval at {at} must be closed on both sides")]
    BadSingleton { at: Box<Scalar> },

    #[error("intervals do not partition the domain: {0}")]
    NotAPartition(String),

    #[error("sample contains no points")]
    EmptySample,

    #[error("expected a sample of size {expected}, got {got}")]
    WrongSampleSize { expected: usize, got: usize },

    #[error("collection is invalid: {0}")]
    InvalidCollection(String),

    #[error("the function has no sign change strictly inside the domain")]
    ConstantFunction,

    #[error("threshold must be positive, got {0}")]
    NonPositiveGamma(Box<Scalar>),

    #[error("collection does not have the required disjoint shape: {0}")]
    BadShape(String),

    #[error("precondition not met: {0}")]
    ConditionNotMet(String),

    #[error("bad configuration: {0}")]
    BadConfig(String),
}
