//! Exact arithmetic: scalars in `ℚ(q)`, Laurent polynomials on the torus,
//! and rational functions whose denominators are products of binomials
//! `(t^α − c)^m` over positive real roots.

mod binomial;
mod poly;
mod ratfunc;
mod scalar;

pub use binomial::BinomialFrame;
pub use poly::{ExpVec, LaurentPoly};
pub use ratfunc::{DivisorClass, RatFunc, RootFactor};
pub use scalar::QScalar;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LaurentError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error at byte {position} in `{input}`: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("not divisible, remainder {remainder}")]
    NotDivisible { remainder: LaurentPoly },
    #[error("binomial t^λ - c needs λ != 0 and c != 0")]
    DegenerateBinomial,
    #[error("cannot invert {0}: numerator is not a unit times stored factors")]
    NotInvertible(String),
}
