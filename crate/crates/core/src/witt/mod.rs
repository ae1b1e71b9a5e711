//! Big Witt vectors over exact coefficient rings and the characteristic
//! polynomial map from endomorphism classes.

mod endo;
mod ring;
mod vector;

use alloc::string::String;
use thiserror::Error;

pub use endo::{weighted_shift, EndClass, RingMatrix};
pub use ring::{parse_elem, CoefficientRing, Elem};
pub use vector::{nilpotence_exponent, WittVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WittError {
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{value} is not an element of {ring}")]
    NotInRing { value: String, ring: String },
    #[error("unknown coefficient ring `{0}` (expected Z, Q, Z/N or Z[1/l])")]
    UnknownRing(String),
    #[error("cannot parse ring element `{0}`")]
    BadElement(String),
    #[error("operands live over different rings ({left} and {right})")]
    RingMismatch { left: CoefficientRing, right: CoefficientRing },
    #[error("truncation mismatch ({left} and {right})")]
    TruncationMismatch { left: usize, right: usize },
    #[error("truncation must be positive")]
    ZeroTruncation,
    #[error("ghost components over {ring} need {n} to be invertible")]
    NonInvertibleGhost { ring: CoefficientRing, n: u64 },
    #[error("operator index must be positive")]
    ZeroIndex,
    #[error("matrix dimensions do not match ({left} and {right})")]
    DimensionMismatch { left: usize, right: usize },
    #[error("matrix is {rows}x{cols}, expected a square matrix")]
    NotSquare { rows: usize, cols: usize },
}

impl WittError {
    pub fn code(&self) -> &'static str {
        match self {
            WittError::BadModulus(_) => "BAD_MODULUS",
            WittError::NotPrime(_) => "NOT_PRIME",
            WittError::NotInRing { .. } => "NOT_IN_RING",
            WittError::UnknownRing(_) => "UNKNOWN_RING",
            WittError::BadElement(_) => "BAD_ELEMENT",
            WittError::RingMismatch { .. } => "RING_MISMATCH",
            WittError::TruncationMismatch { .. } => "TRUNC_MISMATCH",
            WittError::ZeroTruncation => "ZERO_TRUNCATION",
            WittError::NonInvertibleGhost { .. } => "NON_INVERTIBLE_GHOST",
            WittError::ZeroIndex => "ZERO_INDEX",
            WittError::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            WittError::NotSquare { .. } => "NOT_SQUARE",
        }
    }
}
