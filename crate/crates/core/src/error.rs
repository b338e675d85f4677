use thiserror::Error;

use crate::laurent::LaurentError;
use crate::rootdata::DatumError;

/// Errors from the algebraic layers (algebra, membership, normal forms,
/// relation suites).
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error(transparent)]
    Datum(#[from] DatumError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("elements are defined over different root data")]
    DatumMismatch,
    #[error("not in the span of the σ_w: the [{weyl}] coefficient divided by θ_w is {witness}")]
    NotInSpan { weyl: String, witness: String },
    #[error("sample set is missing {0}")]
    MissingSamples(String),
}
