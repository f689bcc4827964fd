//! Crate-wide error type.

use crate::field::FieldValue;
use thiserror::Error;

/// Errors raised by exact-geometry operations.
///
/// Witness-carrying variants store the offending point or vector as raw
/// coordinates so callers can report it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("operation requires a finite field")]
    InfiniteField,
    #[error("empty set")]
    EmptySet,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: i64, got: i64 },
    #[error("operation requires a negative bundle degree")]
    WrongDegreeSign,
    #[error("wrong bundle degree: expected {expected}, got {got}")]
    WrongDegree { expected: i64, got: i64 },
    #[error("syntax error at byte {pos}: {message}")]
    SyntaxError { pos: usize, message: String },
    #[error("unknown variable `{name}` at byte {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("invalid literal `{text}`")]
    InvalidLiteral { text: String },
    #[error("zero vector has no projective class")]
    ZeroVector,
    #[error("point lies in the chart's excluded hyperplane")]
    PointInHyperplane,
    #[error("vector does not lie in the chart hyperplane")]
    NotInHyperplane,
    #[error("point lies outside chart {chart}")]
    OutsideChart { chart: usize },
    #[error("point lies outside the chart overlap")]
    OutsideOverlap,
    #[error("enumeration size {size} exceeds limit {limit}")]
    TooLarge { size: u128, limit: u128 },
    #[error("map is not affine (witness point {witness:?})")]
    NotAffine { witness: Vec<FieldValue> },
    #[error("fiber elements sit over different base points")]
    BaseMismatch,
    #[error("denominator vanishes at {witness:?}")]
    DenominatorVanishes { witness: Vec<FieldValue> },
    #[error("point lies in the kernel of the linear map")]
    InKernel,
    #[error("all components vanish at the point")]
    IndeterminacyPoint,
    #[error("transition ratios are not a single constant (witness {witness:?})")]
    NotProportional { witness: Vec<FieldValue> },
    #[error("rational map evaluated on the wrong kind of domain")]
    DomainKindMismatch,
    #[error("nonvanishing could not be certified")]
    CannotCertify,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
