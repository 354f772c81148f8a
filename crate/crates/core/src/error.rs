use thiserror::Error;

/// Errors raised by the polynomial, algebraic, projection, valuation and CAD layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VarCountMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for a ring in {nvars} variables")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("zero polynomial not allowed in {0}")]
    ZeroPolynomial(&'static str),

    #[error("{op} needs degree at least {required} in the main variable, found {found}")]
    DegreeTooLow {
        op: &'static str,
        required: usize,
        found: usize,
    },

    #[error("inexact division in {0}")]
    InexactDivision(&'static str),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input to {0}")]
    Empty(&'static str),

    #[error("evaluator overflow while computing exponent {0}")]
    Overflow(usize),

    #[error("{0}")]
    InvalidInterval(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cell {0} is not full-dimensional")]
    NotFullDimensional(String),

    #[error("substituted polynomial vanishes identically along the curve")]
    CurveDegenerate,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Whether the error reflects a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::InexactDivision(_) | Error::Invariant(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
