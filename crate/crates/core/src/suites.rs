//! Seeded property suites: closure of `H̃` and `H_q` under products, the
//! `Δ`-conjugation criterion, preservation of polynomials by the action,
//! normal-form round trips and the leading-term law.
//!
//! Samples are drawn sequentially from the seed and checked in parallel, so
//! reports depend only on the seed.

use std::sync::Arc;

use crate::algebra::AlgebraElement;
use crate::demazure::{normal_form, sigma_w, theta, NormalForm};
use crate::error::Error;
use crate::laurent::{LaurentPoly, QScalar, RatFunc};
use crate::membership::{check_membership, delta_criterion, Level};
use crate::presentations::{run_jobs, Job, Progress, RelationEntry, RelationReport};
use crate::rootdata::RootDatum;
use crate::sampling::Sampler;

fn sample_id(k: usize) -> String {
    format!("sample {k:03}")
}

/// Products of `H_q` members stay in `H_q`; products of `H̃` members stay in `H̃`.
pub fn closure(
    datum: &Arc<RootDatum>,
    count: usize,
    seed: u64,
    progress: Progress<'_>,
) -> Result<RelationReport, Error> {
    let mut s = Sampler::new(datum, seed);
    let mut pairs = Vec::with_capacity(2 * count);
    for k in 0..count {
        pairs.push((Level::Hq, k, s.hq_element(), s.hq_element()));
    }
    for k in 0..count {
        pairs.push((Level::Htilde, k, s.htilde_only_element(), s.hq_element()));
    }
    let jobs = pairs
        .into_iter()
        .map(|(level, k, p, q)| -> Job<'_> {
            Box::new(move || {
                let ok = check_membership(&(&p * &q), level).element_ok();
                let id = match level {
                    Level::Hq => "1.4/hq",
                    Level::Htilde => "1.4/htilde",
                };
                Ok(RelationEntry::verdict(id, sample_id(k), ok))
            })
        })
        .collect();
    run_jobs(jobs, progress)
}

/// `Δ^{-1} P Δ ∈ H̃` agrees with `P ∈ H_q` on `count` samples of each kind.
pub fn delta_agreement(
    datum: &Arc<RootDatum>,
    count: usize,
    seed: u64,
    progress: Progress<'_>,
) -> Result<RelationReport, Error> {
    datum.require_finite()?;
    let mut s = Sampler::new(datum, seed);
    let mut samples = Vec::with_capacity(2 * count);
    for k in 0..count {
        samples.push((format!("in {}", sample_id(k)), s.hq_element()));
        samples.push((format!("out {}", sample_id(k)), s.htilde_only_element()));
    }
    let jobs = samples
        .into_iter()
        .map(|(id, p)| -> Job<'_> {
            Box::new(move || {
                let in_hq = check_membership(&p, Level::Hq).element_ok();
                let crit = delta_criterion(&p)?;
                Ok(RelationEntry::verdict("2.4", id.clone(), in_hq == crit))
            })
        })
        .collect();
    run_jobs(jobs, progress)
}

/// `P̂(f)` is polynomial for `P ∈ H̃` and polynomial `f`; for `P ∈ H_q` and `f`
/// divisible by every `t^α − q^{-2}` (finite types), so is `P̂(f)`.
pub fn action_preservation(
    datum: &Arc<RootDatum>,
    count: usize,
    seed: u64,
    progress: Progress<'_>,
) -> Result<RelationReport, Error> {
    let mut s = Sampler::new(datum, seed);
    let vanishing = if datum.is_finite() {
        let roots = datum.positive_roots()?.to_vec();
        let product = roots.iter().fold(LaurentPoly::one(datum.rank_x()), |acc, a| {
            &acc * &LaurentPoly::binomial(a.character(), &QScalar::q_pow(-2))
        });
        Some((roots, product))
    } else {
        None
    };
    let mut samples = Vec::new();
    for k in 0..count {
        let p = if k % 2 == 0 { s.hq_element() } else { s.htilde_only_element() };
        samples.push((k, false, p, s.poly(3)));
        if let Some((_, product)) = &vanishing {
            let g = s.poly(2);
            samples.push((k, true, s.hq_element(), &g * product));
        }
    }
    let vanishing = &vanishing;
    let jobs = samples
        .into_iter()
        .map(|(k, ideal, p, f)| -> Job<'_> {
            Box::new(move || {
                let image = p.apply(&RatFunc::from_poly(f.clone()));
                let ok = if ideal {
                    let (roots, _) = vanishing.as_ref().expect("finite type");
                    image.is_polynomial()
                        && roots.iter().all(|a| image.vanishes_on(a, &QScalar::q_pow(-2)))
                } else {
                    image.is_polynomial()
                };
                let id = if ideal { "3.1(ii)" } else { "3.1(i)" };
                Ok(RelationEntry::verdict(id, sample_id(k), ok))
            })
        })
        .collect();
    run_jobs(jobs, progress)
}

/// Coefficient maps survive reconstruct then decompose, `H_q` samples survive
/// decompose then reconstruct, and `H̃ ∖ H_q` samples are rejected.
pub fn normal_form_roundtrip(
    datum: &Arc<RootDatum>,
    count: usize,
    max_length: usize,
    seed: u64,
    progress: Progress<'_>,
) -> Result<RelationReport, Error> {
    enum Case {
        Map(NormalForm),
        Member(AlgebraElement),
        Outside(AlgebraElement),
    }
    let mut s = Sampler::new(datum, seed);
    let mut cases = Vec::new();
    for k in 0..count {
        cases.push((k, Case::Map(NormalForm::new(datum, s.coefficient_map(max_length)))));
        cases.push((k, Case::Member(s.hq_element())));
        cases.push((k, Case::Outside(s.htilde_only_element())));
    }
    let jobs = cases
        .into_iter()
        .map(|(k, case)| -> Job<'_> {
            Box::new(move || {
                Ok(match &case {
                    Case::Map(nf) => {
                        let p = nf.reconstruct();
                        let ok = !p.is_zero() && normal_form(&p).as_ref() == Ok(nf);
                        RelationEntry::verdict("2.5/decompose", sample_id(k), ok)
                    }
                    Case::Member(p) => {
                        let ok = normal_form(p).map(|nf| nf.reconstruct() == *p).unwrap_or(false);
                        RelationEntry::verdict("2.5/reconstruct", sample_id(k), ok)
                    }
                    Case::Outside(p) => {
                        let ok = matches!(normal_form(p), Err(Error::NotInSpan { .. }));
                        RelationEntry::verdict("2.5/not-in-span", sample_id(k), ok)
                    }
                })
            })
        })
        .collect();
    run_jobs(jobs, progress)
}

/// The `[w]`-coefficient of `σ_w` is `θ_w` for every `w` with `ℓ(w) ≤ max_length`.
pub fn leading_terms(
    datum: &Arc<RootDatum>,
    max_length: usize,
    progress: Progress<'_>,
) -> Result<RelationReport, Error> {
    let elements = datum.elements_up_to_length(max_length);
    for w in &elements {
        sigma_w(datum, w);
    }
    let jobs = elements
        .into_iter()
        .map(|w| -> Job<'_> {
            Box::new(move || {
                let lhs = AlgebraElement::function(datum, sigma_w(datum, &w).coefficient(&w));
                let rhs = AlgebraElement::function(datum, theta(datum, &w));
                Ok(RelationEntry::compare("2.8", format!("w={w}"), &lhs, &rhs, false))
            })
        })
        .collect();
    run_jobs(jobs, progress)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::no_progress;

    #[test]
    fn small_runs_pass() {
        let d = RootDatum::preset("A2").unwrap();
        assert!(closure(&d, 4, 1, &no_progress).unwrap().all_pass());
        assert!(delta_agreement(&d, 3, 2, &no_progress).unwrap().all_pass());
        assert!(action_preservation(&d, 3, 3, &no_progress).unwrap().all_pass());
        assert!(normal_form_roundtrip(&d, 3, 3, 4, &no_progress).unwrap().all_pass());
        assert!(leading_terms(&d, 3, &no_progress).unwrap().all_pass());
    }
}
