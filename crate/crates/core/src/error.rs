use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("slope denominator must be positive, got {0}")]
    NonPositiveDenominator(i64),

    #[error("operation `{0}` is undefined on the +inf slope")]
    InfiniteSlope(&'static str),

    #[error("multiplicity or length must be positive, got {0}")]
    NonPositive(i64),

    #[error("operation `{0}` is undefined on the zero object")]
    ZeroObject(&'static str),

    #[error("parameter out of range: {0}")]
    OutOfRange(String),

    #[error("tilted object violates slope conditions: {0}")]
    SlopeCondition(String),

    #[error("torsion is not supported by `{0}`")]
    TorsionUnsupported(&'static str),

    #[error("parse error at position {pos}: expected {expected}, found {found:?}")]
    Parse {
        pos: usize,
        expected: String,
        found: String,
    },

    #[error("differentials do not compose to zero at degree {0}")]
    NotAComplex(i64),

    #[error("dimension mismatch: {0}")]
    Shape(String),

    #[error("décalage requires a non-zero element f")]
    ZeroDivisor,

    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("exactness check failed: {0}")]
    Certificate(String),
}
