//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    CompositeModulus(u64),
    #[error("bad reduction: {0}")]
    BadReduction(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("degree {degree} too small for polynomial of total degree {needed}")]
    DegreeTooSmall { degree: u32, needed: u32 },
    #[error("point does not lie on the variety")]
    PointNotOnVariety,
    #[error("series is not invertible")]
    NotInvertible,
    #[error("coefficient domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("series valuation {0} is odd, square root undefined")]
    OddValuation(i64),
    #[error("leading coefficient is not a square in the coefficient domain")]
    NonSquareLeadingCoefficient,
    #[error("precision too low: need more than {required} coefficients, have {available}")]
    PrecisionTooLow { required: i64, available: i64 },
    #[error("no relation found (nullspace is trivial)")]
    EmptyBasis,
    #[error("input vectors are linearly dependent")]
    DependentInput,
    #[error("no rational-function relation found at the given degree bound")]
    NoRelationFound,
    #[error("inconsistent point counts: {0}")]
    InconsistentCounts(String),
    #[error("prime list exhausted without a witness")]
    Exhausted,
    #[error("unknown dataset entry `{0}`")]
    UnknownEntry(String),
    #[error("clearing exponent {0} is odd")]
    OddClearingExponent(i64),
    #[error("denominator does not divide after clearing: {0}")]
    NotCleared(String),
    #[error("value undefined at the given point: {0}")]
    UndefinedValue(String),
    #[error("enumeration too large: {candidates} candidates exceeds limit {limit} (use force to override)")]
    EnumerationTooLarge { candidates: u128, limit: u128 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Invalid(String),
}
