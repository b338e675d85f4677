//! Demazure–Lusztig elements `σ_i`, products `σ_w`, the functions `θ_w` and
//! `Δ`, and the normal form in the basis `{σ_w}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::AlgebraElement;
use crate::error::Error;
use crate::laurent::{ExpVec, LaurentPoly, QScalar, RatFunc, RootFactor};
use crate::presentations::RelationReport;
use crate::rootdata::{Root, RootDatum, WeylElt};

fn q_minus_qinv() -> QScalar {
    QScalar::q() - QScalar::q_pow(-1)
}

/// `(q t^α − q^{-1}) / (t^α − 1)`.
fn theta_factor(datum: &RootDatum, alpha: &Root) -> RatFunc {
    let num = LaurentPoly::term(QScalar::q(), ExpVec::from_character(alpha.character()))
        - LaurentPoly::constant(datum.rank_x(), QScalar::q_pow(-1));
    RatFunc::new(num, vec![RootFactor::new(alpha.clone(), QScalar::one(), 1)])
}

/// `σ_i = ((q t^{α_i} − q^{-1})/(t^{α_i} − 1))[s_i] − ((q − q^{-1})/(t^{α_i} − 1))[1]`.
pub fn sigma(datum: &Arc<RootDatum>, label: usize) -> Result<AlgebraElement, Error> {
    let i = datum.index_of(label)?;
    let alpha = datum.simple_root(i);
    let s = datum.generator(label)?;
    let pole = RootFactor::new(alpha.clone(), QScalar::one(), 1);
    let lower = RatFunc::new(
        LaurentPoly::constant(datum.rank_x(), -q_minus_qinv()),
        vec![pole],
    );
    Ok(AlgebraElement::from_terms(
        datum,
        [(s, theta_factor(datum, &alpha)), (datum.identity(), lower)],
    ))
}

/// `σ_i^{-1} = σ_i − (q − q^{-1})`, from the quadratic relation.
pub fn sigma_inverse(datum: &Arc<RootDatum>, label: usize) -> Result<AlgebraElement, Error> {
    Ok(&sigma(datum, label)? - &AlgebraElement::scalar(datum, q_minus_qinv()))
}

/// `σ_{i_1} ⋯ σ_{i_k}` along an arbitrary word of labels.
pub fn sigma_word(datum: &Arc<RootDatum>, labels: &[usize]) -> Result<AlgebraElement, Error> {
    let mut acc = AlgebraElement::one(datum);
    for &l in labels {
        acc = &acc * &sigma(datum, l)?;
    }
    Ok(acc)
}

/// `σ_w` along the canonical reduced word, memoized per datum.
pub fn sigma_w(datum: &Arc<RootDatum>, w: &WeylElt) -> AlgebraElement {
    if let Some(terms) = datum.sigma_memo.lock().expect("memo lock").get(w) {
        return AlgebraElement::from_terms(datum, terms.iter().map(|(k, v)| (k.clone(), v.clone())));
    }
    let value = if w.is_identity() {
        AlgebraElement::one(datum)
    } else {
        let first = w.word()[0];
        let g = datum.generator(first).expect("canonical label");
        let rest = datum.mul(&g, w);
        &sigma(datum, first).expect("canonical label") * &sigma_w(datum, &rest)
    };
    datum
        .sigma_memo
        .lock()
        .expect("memo lock")
        .insert(w.clone(), Arc::new(value.terms().clone()));
    value
}

/// `θ_w = ∏_{α ∈ D(w)} (q t^α − q^{-1})/(t^α − 1)`.
pub fn theta(datum: &RootDatum, w: &WeylElt) -> RatFunc {
    let roots = datum.inversion_set(w);
    let mut num = LaurentPoly::one(datum.rank_x());
    for a in &roots {
        num = &num
            * &(LaurentPoly::term(QScalar::q(), ExpVec::from_character(a.character()))
                - LaurentPoly::constant(datum.rank_x(), QScalar::q_pow(-1)));
    }
    let den = roots
        .into_iter()
        .map(|a| RootFactor::new(a, QScalar::one(), 1))
        .collect();
    RatFunc::new(num, den)
}

/// `θ_w^{-1} = ∏ (t^α − 1) / (q (t^α − q^{-2}))`.
pub fn theta_inverse(datum: &RootDatum, w: &WeylElt) -> RatFunc {
    let roots = datum.inversion_set(w);
    let k = roots.len() as i64;
    let mut num = LaurentPoly::constant(datum.rank_x(), QScalar::q_pow(-k));
    for a in &roots {
        num = &num * &LaurentPoly::binomial(a.character(), &QScalar::one());
    }
    let den = roots
        .into_iter()
        .map(|a| RootFactor::new(a, QScalar::q_pow(-2), 1))
        .collect();
    RatFunc::new(num, den)
}

/// Which sign convention to use for the half-weight factors of `Δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaOrientation {
    /// `∏ (q^{-1} t^{-α/2} − q t^{α/2})`, vanishing on `t^α = q^{-2}`.
    Vanishing,
    /// `∏ (q^{-1} t^{α/2} − q t^{-α/2})`, vanishing on `t^α = q^2`.
    Reversed,
}

struct DeltaParts {
    unit: QScalar,
    shift: ExpVec,
    factors: Vec<RootFactor>,
}

fn delta_parts(datum: &RootDatum, orientation: DeltaOrientation) -> Result<DeltaParts, Error> {
    let pos = datum.positive_roots()?;
    let n = pos.len() as i64;
    // Vanishing: −q t^{-α/2} (t^α − q^{-2}); Reversed: q^{-1} t^{-α/2} (t^α − q^2)
    let (unit, target) = match orientation {
        DeltaOrientation::Vanishing => ((-QScalar::q()).pow(n), QScalar::q_pow(-2)),
        DeltaOrientation::Reversed => (QScalar::q_pow(-n), QScalar::q_pow(2)),
    };
    let mut shift = ExpVec::zero(datum.rank_x());
    for a in pos {
        shift = shift.sub(&ExpVec(a.character().to_vec()));
    }
    let factors = pos
        .iter()
        .map(|a| RootFactor::new(a.clone(), target.clone(), 1))
        .collect();
    Ok(DeltaParts { unit, shift, factors })
}

/// `Δ = ∏_{α > 0} (q^{-1} t^{-α/2} − q t^{α/2})` (finite types).
pub fn make_delta(datum: &RootDatum) -> Result<RatFunc, Error> {
    make_delta_with(datum, DeltaOrientation::Vanishing)
}

pub fn make_delta_with(datum: &RootDatum, orientation: DeltaOrientation) -> Result<RatFunc, Error> {
    let p = delta_parts(datum, orientation)?;
    Ok(RatFunc::from_factored(p.unit, p.shift, &p.factors, &[]))
}

pub fn make_delta_inverse(datum: &RootDatum) -> Result<RatFunc, Error> {
    let p = delta_parts(datum, DeltaOrientation::Vanishing)?;
    Ok(RatFunc::from_factored(
        p.unit.inv()?,
        p.shift.scaled(-1),
        &[],
        &p.factors,
    ))
}

/// Coefficients `c_w ∈ ℂ[T]` with `P = Σ c_w σ_w`.
#[derive(Clone, PartialEq, Eq)]
pub struct NormalForm {
    datum: Arc<RootDatum>,
    coeffs: BTreeMap<WeylElt, LaurentPoly>,
}

impl std::fmt::Debug for NormalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map().entries(self.coeffs.iter()).finish()
    }
}

impl NormalForm {
    pub fn new(
        datum: &Arc<RootDatum>,
        coeffs: impl IntoIterator<Item = (WeylElt, LaurentPoly)>,
    ) -> Self {
        let mut map: BTreeMap<WeylElt, LaurentPoly> = BTreeMap::new();
        for (w, p) in coeffs {
            let e = map
                .entry(w)
                .or_insert_with(|| LaurentPoly::zero(datum.rank_x()));
            *e = &*e + &p;
        }
        map.retain(|_, p| !p.is_zero());
        NormalForm {
            datum: datum.clone(),
            coeffs: map,
        }
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn coeffs(&self) -> &BTreeMap<WeylElt, LaurentPoly> {
        &self.coeffs
    }

    /// `Σ c_w σ_w`.
    pub fn reconstruct(&self) -> AlgebraElement {
        self.coeffs
            .iter()
            .fold(AlgebraElement::zero(&self.datum), |acc, (w, c)| {
                &acc + &sigma_w(&self.datum, w).left_mul_poly(c)
            })
    }
}

/// Decompose `P` in the basis `{σ_w}` over `ℂ[T]` by repeatedly removing the
/// leading term `f_w [w]` as `(f_w θ_w^{-1}) σ_w`.
pub fn normal_form(p: &AlgebraElement) -> Result<NormalForm, Error> {
    let datum = p.datum().clone();
    let mut rest = p.clone();
    let mut coeffs = Vec::new();
    while let Some((w, f)) = rest.leading() {
        let w = w.clone();
        let c = f * &theta_inverse(&datum, &w);
        let Some(poly) = c.as_polynomial().cloned() else {
            return Err(Error::NotInSpan {
                weyl: w.to_string(),
                witness: c.to_string(),
            });
        };
        let next = &rest - &sigma_w(&datum, &w).left_mul_poly(&poly);
        for y in next.support() {
            assert!(
                rest.terms().contains_key(y) || (y != &w && datum.bruhat_leq(y, &w)),
                "subtraction introduced {y}, which is not below {w}"
            );
        }
        assert!(!next.terms().contains_key(&w), "leading coefficient did not cancel");
        rest = next;
        coeffs.push((w, poly));
    }
    Ok(NormalForm::new(&datum, coeffs))
}

/// Quadratic relation `(σ_i + q^{-1})(σ_i − q) = 0` for every generator, and
/// for finite types `σ_i(Δ) = −q^{-1} Δ`.
pub fn check_identities(datum: &Arc<RootDatum>) -> Result<RelationReport, Error> {
    let mut report = RelationReport::default();
    for label in datum.labels() {
        let s = sigma(datum, label)?;
        let a = &s + &AlgebraElement::scalar(datum, QScalar::q_pow(-1));
        let b = &s - &AlgebraElement::scalar(datum, QScalar::q());
        report.record(
            "5.2.1",
            format!("(σ_{label}+q^-1)(σ_{label}-q)=0"),
            &(&a * &b),
            &AlgebraElement::zero(datum),
            false,
        );
    }
    if datum.is_finite() {
        let delta = make_delta(datum)?;
        for label in datum.labels() {
            let s = sigma(datum, label)?;
            let lhs = AlgebraElement::function(datum, s.apply(&delta));
            let rhs = AlgebraElement::function(datum, delta.scale(&-QScalar::q_pow(-1)));
            report.record("2.10", format!("σ_{label}(Δ)=-q^-1·Δ"), &lhs, &rhs, false);
        }
    }
    report.sort();
    Ok(report)
}
