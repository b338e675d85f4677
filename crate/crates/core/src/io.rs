//! JSON encodings of data, elements, normal forms and reports.
//!
//! Scalars travel as strings in the `QScalar` grammar so that files stay exact.
//! Exponents are doubled, matching `ExpVec`. Reports carry `"schema": "1"`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::algebra::AlgebraElement;
use crate::demazure::NormalForm;
use crate::elliptic::NumericReport;
use crate::laurent::{ExpVec, LaurentError, LaurentPoly, QScalar, RatFunc, RootFactor};
use crate::membership::MembershipReport;
use crate::presentations::RelationReport;
use crate::rootdata::{CartanMatrix, DatumError, Kind, Lattice, RootDatum};

pub const SCHEMA: &str = "1";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoError {
    #[error("JSON error at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("at {path}: {source}")]
    Scalar {
        path: String,
        #[source]
        source: LaurentError,
    },
    #[error("at {path}: {message}")]
    Invalid { path: String, message: String },
    #[error(transparent)]
    Datum(#[from] DatumError),
}

impl From<serde_json::Error> for IoError {
    fn from(e: serde_json::Error) -> Self {
        IoError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct MonomialJson {
    coef: String,
    exp: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct FactorJson {
    root: Vec<i64>,
    target: String,
    mult: u32,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    word: Vec<usize>,
    num: Vec<MonomialJson>,
    #[serde(default)]
    den: Vec<FactorJson>,
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct CoeffJson {
    word: Vec<usize>,
    poly: Vec<MonomialJson>,
}

#[derive(Serialize, Deserialize)]
struct NormalFormJson {
    coeffs: Vec<CoeffJson>,
}

#[derive(Serialize, Deserialize)]
struct DatumJson {
    cartan: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    kind: Option<Kind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    roots: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coroots: Option<Vec<Vec<i64>>>,
}

fn poly_to_json(p: &LaurentPoly) -> Vec<MonomialJson> {
    p.terms()
        .map(|(e, c)| MonomialJson {
            coef: c.to_string(),
            exp: e.0.clone(),
        })
        .collect()
}

fn parse_scalar(s: &str, path: &str) -> Result<QScalar, IoError> {
    s.parse().map_err(|source| IoError::Scalar {
        path: path.to_string(),
        source,
    })
}

fn poly_from_json(items: &[MonomialJson], rank: usize, path: &str) -> Result<LaurentPoly, IoError> {
    let mut p = LaurentPoly::zero(rank);
    for (k, m) in items.iter().enumerate() {
        let here = format!("{path}[{k}]");
        if m.exp.len() != rank {
            return Err(IoError::Invalid {
                path: format!("{here}.exp"),
                message: format!("expected {rank} doubled exponents, got {}", m.exp.len()),
            });
        }
        let c = parse_scalar(&m.coef, &format!("{here}.coef"))?;
        p.add_term(ExpVec(m.exp.clone()), c);
    }
    Ok(p)
}

pub fn element_to_json(p: &AlgebraElement) -> Value {
    let terms: Vec<TermJson> = p
        .terms()
        .iter()
        .map(|(w, f)| TermJson {
            word: w.word().to_vec(),
            num: poly_to_json(f.num()),
            den: f
                .den()
                .iter()
                .map(|fac| FactorJson {
                    root: fac.root.coords().to_vec(),
                    target: fac.target.to_string(),
                    mult: fac.mult,
                })
                .collect(),
        })
        .collect();
    serde_json::to_value(ElementJson { terms }).expect("serializable")
}

pub fn element_from_json(datum: &Arc<RootDatum>, text: &str) -> Result<AlgebraElement, IoError> {
    let parsed: ElementJson = serde_json::from_str(text)?;
    let rank = datum.rank_x();
    let mut items = Vec::new();
    for (k, t) in parsed.terms.iter().enumerate() {
        let path = format!("terms[{k}]");
        let w = datum.from_word(&t.word).map_err(|e| IoError::Invalid {
            path: format!("{path}.word"),
            message: e.to_string(),
        })?;
        let num = poly_from_json(&t.num, rank, &format!("{path}.num"))?;
        let mut factors = Vec::new();
        for (j, f) in t.den.iter().enumerate() {
            let here = format!("{path}.den[{j}]");
            let invalid = |message: String| IoError::Invalid {
                path: here.clone(),
                message,
            };
            if f.root.len() != datum.num_nodes() || !datum.is_real_root(&f.root) {
                return Err(invalid(format!("{:?} is not a real root", f.root)));
            }
            let target = parse_scalar(&f.target, &format!("{here}.target"))?;
            if target.is_zero() {
                return Err(invalid("factor target must be nonzero".into()));
            }
            factors.push(RootFactor::new(datum.root_from_coords(f.root.clone()), target, f.mult));
        }
        items.push((w, RatFunc::new(num, factors)));
    }
    Ok(AlgebraElement::from_terms(datum, items))
}

pub fn normal_form_to_json(nf: &NormalForm) -> Value {
    let coeffs: Vec<CoeffJson> = nf
        .coeffs()
        .iter()
        .map(|(w, p)| CoeffJson {
            word: w.word().to_vec(),
            poly: poly_to_json(p),
        })
        .collect();
    serde_json::to_value(NormalFormJson { coeffs }).expect("serializable")
}

pub fn normal_form_from_json(datum: &Arc<RootDatum>, text: &str) -> Result<NormalForm, IoError> {
    let parsed: NormalFormJson = serde_json::from_str(text)?;
    let mut items = Vec::new();
    for (k, c) in parsed.coeffs.iter().enumerate() {
        let path = format!("coeffs[{k}]");
        let w = datum.from_word(&c.word).map_err(|e| IoError::Invalid {
            path: format!("{path}.word"),
            message: e.to_string(),
        })?;
        items.push((w, poly_from_json(&c.poly, datum.rank_x(), &format!("{path}.poly"))?));
    }
    Ok(NormalForm::new(datum, items))
}

pub fn datum_to_json(d: &RootDatum) -> Value {
    serde_json::to_value(DatumJson {
        cartan: d.cartan().rows(),
        kind: Some(d.kind()),
        roots: Some(d.simple_roots().to_vec()),
        coroots: Some(d.simple_coroots().to_vec()),
    })
    .expect("serializable")
}

/// Reads a datum. Missing `roots`/`coroots` select the default realization,
/// and explicit ones equal to it are recognized as such.
pub fn datum_from_json(text: &str) -> Result<Arc<RootDatum>, IoError> {
    let parsed: DatumJson = serde_json::from_str(text)?;
    let cartan = CartanMatrix::new(parsed.cartan)?;
    let kind = cartan.classify()?;
    if let Some(k) = parsed.kind {
        if k != kind {
            return Err(IoError::Invalid {
                path: "kind".into(),
                message: format!("the Cartan matrix has kind {kind}, not {k}"),
            });
        }
    }
    let default = RootDatum::new(cartan.clone(), Lattice::Default)?;
    match (parsed.roots, parsed.coroots) {
        (None, None) => Ok(default),
        (Some(roots), Some(coroots)) => {
            if roots == default.simple_roots() && coroots == default.simple_coroots() {
                Ok(default)
            } else {
                Ok(RootDatum::new(cartan, Lattice::Custom { roots, coroots })?)
            }
        }
        _ => Err(IoError::Invalid {
            path: "roots".into(),
            message: "give both roots and coroots, or neither".into(),
        }),
    }
}

fn datum_label(d: &RootDatum) -> Value {
    match d.name() {
        Some(n) => json!(n),
        None => datum_to_json(d),
    }
}

pub fn relation_report_json(suite: &str, d: &RootDatum, report: &RelationReport) -> Value {
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            let mut v = json!({
                "relation": e.relation,
                "instance": e.instance,
                "status": e.status,
            });
            if let Some(w) = &e.witness {
                v["witness"] = json!(w.to_string());
            }
            v
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "suite": suite,
        "datum": datum_label(d),
        "pass": report.all_pass(),
        "entries": entries,
    })
}

pub fn membership_report_json(d: &RootDatum, report: &MembershipReport) -> Value {
    let violations: Vec<Value> = report
        .violations
        .iter()
        .map(|v| {
            json!({
                "condition": v.condition.id(),
                "root": v.root.coords(),
                "weyl": v.weyl.word(),
                "witness": v.witness,
            })
        })
        .collect();
    json!({
        "schema": SCHEMA,
        "datum": datum_label(d),
        "level": report.level,
        "element_ok": report.element_ok(),
        "violations": violations,
    })
}

pub fn numeric_report_json(suite: &str, params: BTreeMap<&str, Value>, report: &NumericReport) -> Value {
    json!({
        "schema": SCHEMA,
        "suite": suite,
        "params": params,
        "pass": report.all_pass(),
        "checks": report.checks,
    })
}

/// Pretty JSON with a trailing newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demazure::{normal_form, sigma};

    #[test]
    fn element_roundtrip() {
        let d = RootDatum::preset("B2").unwrap();
        let p = &sigma(&d, 1).unwrap() * &sigma(&d, 2).unwrap();
        let text = to_text(&element_to_json(&p));
        assert_eq!(element_from_json(&d, &text).unwrap(), p);
        let nf = normal_form(&p).unwrap();
        let text = to_text(&normal_form_to_json(&nf));
        assert_eq!(normal_form_from_json(&d, &text).unwrap(), nf);
    }

    #[test]
    fn parse_errors_have_locations() {
        let d = RootDatum::preset("A1").unwrap();
        let e = element_from_json(&d, "{\"terms\": [ {\"word\": [1], }").unwrap_err();
        assert!(matches!(e, IoError::Json { line: 1, .. }));
        let bad = r#"{"terms":[{"word":[1],"num":[{"coef":"q^","exp":[0]}]}]}"#;
        let e = element_from_json(&d, bad).unwrap_err();
        assert!(matches!(&e, IoError::Scalar { path, .. } if path == "terms[0].num[0].coef"), "{e}");
        let bad = r#"{"terms":[{"word":[1],"num":[{"coef":"1","exp":[0]}],"den":[{"root":[3],"target":"1","mult":1}]}]}"#;
        assert!(matches!(element_from_json(&d, bad), Err(IoError::Invalid { .. })));
    }

    #[test]
    fn datum_roundtrip() {
        for name in ["A2", "G2", "A1aff"] {
            let d = RootDatum::preset(name).unwrap();
            let back = datum_from_json(&to_text(&datum_to_json(&d))).unwrap();
            assert_eq!(back.lattice(), &Lattice::Default);
            assert_eq!(back.simple_roots(), d.simple_roots());
        }
        let e = datum_from_json(r#"{"cartan":[[2,-1],[-1,2]],"kind":"affine"}"#).unwrap_err();
        assert!(matches!(e, IoError::Invalid { .. }));
    }
}
