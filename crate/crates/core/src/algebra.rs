//! The twisted group algebra `ℂ(T)[W]`.
//!
//! An element is a finite sum `Σ f_w [w]`; the product is
//! `(f[w])·(g[y]) = (f · ^w g)[wy]` and the element acts on functions by
//! `f ↦ Σ P_w · ^w f`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::Error;
use crate::laurent::{LaurentPoly, QScalar, RatFunc};
use crate::rootdata::{RootDatum, WeylElt};

#[derive(Clone)]
pub struct AlgebraElement {
    datum: Arc<RootDatum>,
    terms: BTreeMap<WeylElt, RatFunc>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.datum, &other.datum) || self.datum == other.datum)
            && self.terms == other.terms
    }
}

impl Eq for AlgebraElement {}

/// Pair counts above which products are evaluated in parallel.
const PARALLEL_PAIRS: usize = 16;

impl AlgebraElement {
    pub fn zero(datum: &Arc<RootDatum>) -> Self {
        AlgebraElement {
            datum: datum.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(datum: &Arc<RootDatum>) -> Self {
        Self::term(datum, datum.identity(), RatFunc::one(datum.rank_x()))
    }

    /// `f [w]`.
    pub fn term(datum: &Arc<RootDatum>, w: WeylElt, f: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(w, f);
        }
        AlgebraElement {
            datum: datum.clone(),
            terms,
        }
    }

    /// `1 [w]`.
    pub fn group_element(datum: &Arc<RootDatum>, w: WeylElt) -> Self {
        Self::term(datum, w, RatFunc::one(datum.rank_x()))
    }

    /// `f [e]`.
    pub fn function(datum: &Arc<RootDatum>, f: RatFunc) -> Self {
        Self::term(datum, datum.identity(), f)
    }

    /// `t^λ [e]`.
    pub fn character(datum: &Arc<RootDatum>, lambda: &[i64]) -> Self {
        Self::function(datum, RatFunc::character(lambda))
    }

    pub fn scalar(datum: &Arc<RootDatum>, c: QScalar) -> Self {
        Self::function(datum, RatFunc::constant(datum.rank_x(), c))
    }

    pub fn from_terms(
        datum: &Arc<RootDatum>,
        items: impl IntoIterator<Item = (WeylElt, RatFunc)>,
    ) -> Self {
        let mut grouped: BTreeMap<WeylElt, Vec<RatFunc>> = BTreeMap::new();
        for (w, f) in items {
            grouped.entry(w).or_default().push(f);
        }
        let rank = datum.rank_x();
        let terms = grouped
            .into_iter()
            .map(|(w, fs)| (w, RatFunc::sum(rank, fs.iter())))
            .filter(|(_, f)| !f.is_zero())
            .collect();
        AlgebraElement {
            datum: datum.clone(),
            terms,
        }
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn terms(&self) -> &BTreeMap<WeylElt, RatFunc> {
        &self.terms
    }

    pub fn coefficient(&self, w: &WeylElt) -> RatFunc {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(self.datum.rank_x()))
    }

    pub fn support(&self) -> impl Iterator<Item = &WeylElt> {
        self.terms.keys()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The support element of maximal length, ties broken by canonical word.
    pub fn leading(&self) -> Option<(&WeylElt, &RatFunc)> {
        self.terms.iter().next_back()
    }

    fn same_datum(&self, other: &AlgebraElement) -> Result<(), Error> {
        if Arc::ptr_eq(&self.datum, &other.datum) || self.datum == other.datum {
            Ok(())
        } else {
            Err(Error::DatumMismatch)
        }
    }

    pub fn try_add(&self, other: &AlgebraElement) -> Result<AlgebraElement, Error> {
        self.same_datum(other)?;
        let mut terms = self.terms.clone();
        for (w, g) in &other.terms {
            let s = match terms.get(w) {
                Some(f) => f + g,
                None => g.clone(),
            };
            if s.is_zero() {
                terms.remove(w);
            } else {
                terms.insert(w.clone(), s);
            }
        }
        Ok(AlgebraElement {
            datum: self.datum.clone(),
            terms,
        })
    }

    pub fn scale(&self, c: &QScalar) -> AlgebraElement {
        if c.is_zero() {
            return AlgebraElement::zero(&self.datum);
        }
        AlgebraElement {
            datum: self.datum.clone(),
            terms: self.terms.iter().map(|(w, f)| (w.clone(), f.scale(c))).collect(),
        }
    }

    /// `g · P`, multiplying every coefficient on the left by a function.
    pub fn left_mul_function(&self, g: &RatFunc) -> AlgebraElement {
        AlgebraElement {
            datum: self.datum.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, f)| (w.clone(), g * f))
                .filter(|(_, f)| !f.is_zero())
                .collect(),
        }
    }

    pub fn left_mul_poly(&self, p: &LaurentPoly) -> AlgebraElement {
        AlgebraElement {
            datum: self.datum.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, f)| (w.clone(), f.mul_poly(p)))
                .filter(|(_, f)| !f.is_zero())
                .collect(),
        }
    }

    /// `F_u = Σ_{wy=u} P_w · ^w Q_y`.
    pub fn try_mul(&self, other: &AlgebraElement) -> Result<AlgebraElement, Error> {
        self.same_datum(other)?;
        let d = &self.datum;
        let pairs: Vec<(&WeylElt, &RatFunc, &WeylElt, &RatFunc)> = self
            .terms
            .iter()
            .flat_map(|(w, p)| other.terms.iter().map(move |(y, q)| (w, p, y, q)))
            .collect();
        let product = |&(w, p, y, q): &(&WeylElt, &RatFunc, &WeylElt, &RatFunc)| {
            (d.mul(w, y), p * &q.transform(d, w))
        };
        let items: Vec<(WeylElt, RatFunc)> = if pairs.len() >= PARALLEL_PAIRS {
            pairs.par_iter().map(product).collect()
        } else {
            pairs.iter().map(product).collect()
        };
        Ok(AlgebraElement::from_terms(d, items))
    }

    /// `P̂(f) = Σ_w P_w · ^w f`.
    pub fn apply(&self, f: &RatFunc) -> RatFunc {
        let parts: Vec<RatFunc> = self
            .terms
            .iter()
            .map(|(w, p)| p * &f.transform(&self.datum, w))
            .collect();
        RatFunc::sum(self.datum.rank_x(), parts.iter())
    }

    /// `Δ^{-1} · P · Δ = Σ_w Δ^{-1} P_w ^wΔ [w]` (finite types only).
    pub fn conjugate_by_delta(&self) -> Result<AlgebraElement, Error> {
        let delta = crate::demazure::make_delta(&self.datum)?;
        let delta_inv = crate::demazure::make_delta_inverse(&self.datum)?;
        let d = &self.datum;
        let terms: Vec<(WeylElt, RatFunc)> = self
            .terms
            .iter()
            .map(|(w, p)| (w.clone(), &(&delta_inv * p) * &delta.transform(d, w)))
            .collect();
        Ok(AlgebraElement::from_terms(d, terms))
    }

    /// Every coefficient is a Laurent polynomial.
    pub fn is_polynomial(&self) -> bool {
        self.terms.values().all(RatFunc::is_polynomial)
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_add(rhs).expect("datum mismatch")
    }
}

impl Add for AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: AlgebraElement) -> AlgebraElement {
        &self + &rhs
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        AlgebraElement {
            datum: self.datum.clone(),
            terms: self.terms.iter().map(|(w, f)| (w.clone(), -f)).collect(),
        }
    }
}

impl Neg for AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        -&self
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self + &(-rhs)
    }
}

impl Sub for AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: AlgebraElement) -> AlgebraElement {
        &self - &rhs
    }
}

impl Mul for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.try_mul(rhs).expect("datum mismatch")
    }
}

impl Mul for AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: AlgebraElement) -> AlgebraElement {
        &self * &rhs
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "[{c}]·[{w}]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
