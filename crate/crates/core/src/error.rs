use thiserror::Error;

use crate::monomial::Monomial;

/// Errors surfaced by fallible operations; contract violations (dimension
/// mismatches between values already constructed) panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("ambient dimension must be positive")]
    ZeroAmbientDimension,

    #[error("dimension mismatch: expected {expected} variables, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{op} requires a nonzero ideal")]
    ZeroIdeal { op: &'static str },

    #[error("{op} requires a proper ideal (the unit ideal is not allowed)")]
    UnitIdeal { op: &'static str },

    #[error("{op} requires a squarefree ideal; generator {gen} is not squarefree")]
    NotSquarefree { op: &'static str, gen: Monomial },

    #[error("a prime support must contain at least one variable")]
    EmptyPrimeSupport,

    #[error("variable index {index} out of range for {n} variables")]
    VariableOutOfRange { index: usize, n: usize },

    #[error("the ideal is not generated by distinct variables")]
    NotPrime,

    #[error("colon by the zero ideal is undefined")]
    ColonByZero,

    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("h-wheel condition ({condition}) violated: {detail}")]
    WheelCondition { condition: u8, detail: String },

    #[error(
        "dominating-ideal cross-check failed: transversal enumeration and \
         Alexander dual disagree (this is a bug, please report it)"
    )]
    DualPathMismatch,

    #[error("vertex {vertex} has degree {degree} < t = {t}; the partial cover ideal needs deg >= t")]
    DegreeTooSmall { vertex: usize, degree: usize, t: usize },

    #[error("power witness does not fit in u64")]
    WitnessOverflow,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
