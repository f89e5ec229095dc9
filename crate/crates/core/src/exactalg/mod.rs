//! Exact coefficient fields and the linear algebra everything else is built on.

pub mod echelon;
pub mod field;
pub mod matrix;

pub use echelon::{collect_sparse, kernel_of_images, rank_of_images, sparse_axpy, Echelon, SparseVec};
pub use field::{
    rat, Field, FieldElement, FieldSpec, Modulus, PrimeField, RationalField, DEFAULT_PRIME, PARANOID_PRIME,
};
pub use matrix::{in_span, kernel_basis, mat_vec, rref, ExactMatrix, RrefResult};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExactAlgError {
    #[error("entries from different fields: {left} and {right}")]
    FieldMismatch { left: String, right: String },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("{0} is not a prime below 2^31")]
    InvalidModulus(u64),
    #[error("cannot parse field `{0}` (use rational, prime, paranoid or prime:<p>)")]
    InvalidFieldSpec(String),
    #[error("{value} has a denominator divisible by {modulus}")]
    BadReduction { modulus: u64, value: String },
    #[error("characteristic {characteristic} does not exceed degree {degree}")]
    CharacteristicTooSmall { characteristic: u64, degree: usize },
}
