use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;

use super::{EllipticCurve, EllipticError};
use crate::rootdata::{RootDatum, WeylElt};

/// A coefficient function of the adjoint coordinates `z_i = t^{α_i}`.
pub type Coefficient = Arc<dyn Fn(&[Complex64]) -> Result<Complex64, EllipticError> + Send + Sync>;

/// `Σ f_w [w]` with numerically evaluated coefficients.
#[derive(Clone)]
pub struct EllipticOperator {
    datum: Arc<RootDatum>,
    terms: Vec<(WeylElt, Coefficient)>,
}

impl EllipticOperator {
    pub fn new(datum: &Arc<RootDatum>, terms: Vec<(WeylElt, Coefficient)>) -> Self {
        EllipticOperator {
            datum: datum.clone(),
            terms,
        }
    }

    pub fn identity(datum: &Arc<RootDatum>) -> Self {
        let one: Coefficient = Arc::new(|_| Ok(Complex64::new(1.0, 0.0)));
        Self::new(datum, vec![(datum.identity(), one)])
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn terms(&self) -> &[(WeylElt, Coefficient)] {
        &self.terms
    }

    /// `(f[w])(g[y]) = f · ^w g [wy]` with `(^w g)(t) = g(w^{-1} t)`.
    pub fn mul(&self, other: &EllipticOperator) -> EllipticOperator {
        let d = &self.datum;
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (w, f) in &self.terms {
            let m = pullback_matrix(d, w);
            for (y, g) in &other.terms {
                let (f, g, m) = (f.clone(), g.clone(), m.clone());
                let h: Coefficient = Arc::new(move |z: &[Complex64]| {
                    let moved: Vec<Complex64> = m
                        .iter()
                        .map(|row| row.iter().zip(z).map(|(&c, &x)| x * c as f64).sum())
                        .collect();
                    Ok(f(z)? * g(&moved)?)
                });
                terms.push((d.mul(w, y), h));
            }
        }
        EllipticOperator::new(d, terms)
    }

    /// The coefficient map at a point, with terms on equal elements summed.
    pub fn evaluate(&self, z: &[Complex64]) -> Result<BTreeMap<WeylElt, Complex64>, EllipticError> {
        let mut out: BTreeMap<WeylElt, Complex64> = BTreeMap::new();
        for (w, f) in &self.terms {
            *out.entry(w.clone()).or_default() += f(z)?;
        }
        Ok(out)
    }

    /// `max_w |f_w(z) − g_w(z)|`.
    pub fn deviation(&self, other: &EllipticOperator, z: &[Complex64]) -> Result<f64, EllipticError> {
        let a = self.evaluate(z)?;
        let b = other.evaluate(z)?;
        let zero = Complex64::new(0.0, 0.0);
        Ok(a.keys()
            .chain(b.keys())
            .map(|w| (a.get(w).unwrap_or(&zero) - b.get(w).unwrap_or(&zero)).norm())
            .fold(0.0, f64::max))
    }
}

/// Row `i` holds the simple-root coordinates of `w α_i`, so that
/// `(w^{-1} t)^{α_i} = Σ_j (w α_i)_j z_j`.
fn pullback_matrix(datum: &RootDatum, w: &WeylElt) -> Arc<Vec<Vec<i64>>> {
    let n = datum.num_nodes();
    Arc::new(
        (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                w.act_coords(&e)
            })
            .collect(),
    )
}

/// `σ_i = (sn(q^{-2})/sn(t^{α_i}))[1] + (1 − sn(q^{-2})/sn(t^{α_i}))[s_i]`
/// for every node of a finite datum of rank at most two.
pub fn build_elliptic_sigma(
    curve: &EllipticCurve,
    datum: &Arc<RootDatum>,
) -> Result<Vec<EllipticOperator>, EllipticError> {
    datum.require_finite()?;
    if datum.num_nodes() > 2 {
        return Err(EllipticError::RankTooLarge(datum.num_nodes()));
    }
    let mut out = Vec::new();
    for label in datum.labels() {
        let i = datum.index_of(label)?;
        let s = datum.generator(label)?;
        let curve_a = Arc::new(curve.clone());
        let curve_b = curve_a.clone();
        let a: Coefficient = Arc::new(move |z| Ok(curve_a.sn_q() * curve_a.sn_recip(z[i])?));
        let b: Coefficient =
            Arc::new(move |z| Ok(Complex64::new(1.0, 0.0) - curve_b.sn_q() * curve_b.sn_recip(z[i])?));
        out.push(EllipticOperator::new(datum, vec![(datum.identity(), a), (s, b)]));
    }
    Ok(out)
}
