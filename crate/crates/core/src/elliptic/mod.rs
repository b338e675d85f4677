//! Numerical elliptic Demazure–Lusztig operators.
//!
//! The curve is `ℂ/Λ`, written additively: the multiplicative `q^{-2}` of the
//! rational case becomes `−2q`, and the coefficients of an operator are
//! functions of the adjoint coordinates `z_i = t^{α_i}`.

mod checks;
mod functions;
mod operator;

use num_complex::Complex64;
use thiserror::Error;

use crate::rootdata::DatumError;

pub use checks::{
    check_braid_failure, check_involution, contour_residue, prop46_elements, sample_points,
    sn_derivative_at_zero, sn_self_test, verify_prop46, Bound, EllipticConfig, NumericCheck,
    NumericReport, Prop46Element,
};
pub use functions::{EllipticCurve, MAX_DERIVATIVE};
pub use operator::{build_elliptic_sigma, Coefficient, EllipticOperator};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EllipticError {
    #[error("invalid curve parameters: {0}")]
    InvalidParams(String),
    #[error("evaluation at a pole: z = {0}")]
    Pole(Complex64),
    #[error("derivative order {0} is out of range")]
    DerivativeOrder(usize),
    #[error("elliptic operators are limited to rank 2 (got {0} nodes)")]
    RankTooLarge(usize),
    #[error("this check needs rank {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("could not draw sample points away from the divisors")]
    NoSamples,
    #[error(transparent)]
    Datum(#[from] DatumError),
}
