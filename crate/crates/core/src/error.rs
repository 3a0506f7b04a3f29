use thiserror::Error;

use crate::scalar::Mode;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("{op} is not expressible in {mode} mode")]
    Inexpressible { op: String, mode: Mode },

    #[error("mixed arithmetic modes: expected {expected}, found {found}")]
    ModeMismatch { expected: Mode, found: Mode },

    #[error("series were built with different parameters")]
    ParamMismatch,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("singular point: {0}")]
    Singular(String),

    #[error("series did not converge: last term {last_term:e} exceeds {bound:e}")]
    NonConvergent { last_term: f64, bound: f64 },

    #[error("unsupported factor in denominator: {0}")]
    UnsupportedFactor(String),

    #[error("repeated nonzero pole at w = {0}; no time-domain original exists for it")]
    UnsupportedMultiplicity(String),

    #[error("improper rational function: numerator degree {num} >= denominator degree {den}")]
    Improper { num: usize, den: usize },

    #[error("transform is not invertible: {0}")]
    NonInvertible(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, QError>;
