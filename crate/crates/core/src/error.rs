use thiserror::Error;

use crate::equations::EquationKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{op}: w = 0 where the equation divides by w")]
    SingularInput { op: &'static str },

    #[error("{op} is not defined for {kind}")]
    UnsupportedKind {
        kind: EquationKind,
        op: &'static str,
    },

    #[error("{kind} is restricted to real mode")]
    UnsupportedField { kind: EquationKind },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid initial data: {0}")]
    InvalidInitialData(String),

    #[error("invalid tolerances: {0}")]
    InvalidTolerances(String),

    #[error("non-finite state after step")]
    NonFiniteState,

    #[error("path parameter {t} outside covered span [{lo}, {hi}]")]
    OutOfSpan { t: f64, lo: f64, hi: f64 },

    #[error("wrong kind: {0}")]
    WrongKind(String),

    #[error("discriminant {found} differs from required {expected}")]
    DiscriminantViolation { found: f64, expected: f64 },

    #[error("w = {w} < 0 at z = {z} inside the lift interval")]
    NegativeW { z: f64, w: f64 },

    #[error("{count} zeros inside the lift interval, expected at most one")]
    MultipleZeros { count: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
