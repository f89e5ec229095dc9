use thiserror::Error;

use crate::exactalg::ExactAlgError;
use crate::polyring::PolyError;

/// Errors raised by the algebra modules.
///
/// Variants split into two families: precondition failures (bad input for
/// the requested operation) and internal-consistency failures (two
/// computations that must agree did not). [`Error::is_internal`] tells them apart.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    ExactAlg(#[from] ExactAlgError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("invalid degree sequence: {0}")]
    InvalidDegrees(String),
    #[error("parity condition fails: sum t = {t} must be {expected}")]
    Parity { t: i64, expected: &'static str },
    #[error("not minimally generated: {0}")]
    NotMinimal(String),
    #[error("no quadric among the variable powers {0:?}")]
    NoQuadric(Vec<u32>),
    #[error("quotient is not Artinian within degree {bound}")]
    NonArtinian { bound: usize },
    #[error("zero form has no annihilator of finite colength")]
    ZeroForm,
    #[error("f ∘ G vanishes: the colon ideal is the unit ideal")]
    UnitColon,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("relation does not vanish: {0}")]
    InvalidRelation(String),
    #[error("random draws stayed degenerate after {retries} attempts")]
    RetriesExhausted { retries: usize },
    #[error("internal consistency failure: {0}")]
    Consistency(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Consistency(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
