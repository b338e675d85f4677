//! Root data for finite and untwisted affine Cartan matrices, together with
//! their Weyl groups.
//!
//! Generators are addressed by *labels*: `1..=n` for finite types and
//! `0..=n` for affine types, where `0` is the affine node.

pub mod cartan;
mod datum;
mod roots;
mod weyl;

pub use cartan::{CartanMatrix, Kind, PRESETS};
pub use datum::{AffineData, Lattice, RootDatum};
pub use roots::Root;
pub use weyl::WeylElt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DatumError {
    #[error("not a generalized Cartan matrix: {0}")]
    NotGcm(String),
    #[error("Cartan matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("unsupported Cartan type: {0}")]
    Unsupported(String),
    #[error("invalid realization: {0}")]
    InvalidLattice(String),
    #[error("unknown preset `{0}` (expected one of A1, A2, B2, G2, A1aff, A2aff)")]
    UnknownPreset(String),
    #[error("generator label {label} out of range for this datum")]
    LabelOutOfRange { label: usize },
    #[error("{0} is not a real root")]
    NotARealRoot(String),
    #[error("operation needs a datum of {expected} type")]
    WrongKind { expected: Kind },
}
