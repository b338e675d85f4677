//! Membership in `H̃` (pole and residue conditions) and in `H_q` (vanishing
//! on the shifted divisors), plus the `Δ`-conjugation criterion.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use crate::algebra::AlgebraElement;
use crate::error::Error;
use crate::laurent::{BinomialFrame, QScalar, RatFunc};
use crate::rootdata::{Root, WeylElt};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Level {
    #[serde(rename = "htilde")]
    Htilde,
    #[serde(rename = "hq")]
    Hq,
}

/// The three defining conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    /// Only simple poles along kernel divisors of positive real roots.
    Poles,
    /// Residues of `f_w` and `f_{s_α w}` along `T_α` cancel.
    Residues,
    /// `f_w` vanishes on `T_{α,q^{-2}}` for `α ∈ D(w)`.
    Vanishing,
}

impl Condition {
    pub fn id(&self) -> &'static str {
        match self {
            Condition::Poles => "1.3.1",
            Condition::Residues => "1.3.2",
            Condition::Vanishing => "1.3.3",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    pub root: Root,
    pub weyl: WeylElt,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipReport {
    pub level: Level,
    pub violations: Vec<Violation>,
}

impl MembershipReport {
    pub fn element_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn cites(&self, condition: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == condition)
    }
}

/// Check the defining conditions, listing every violation.
pub fn check_membership(p: &AlgebraElement, level: Level) -> MembershipReport {
    let d = p.datum();
    let one = QScalar::one();
    let mut violations = Vec::new();

    // roots whose kernel divisor carries an admissible simple pole somewhere
    let mut pole_roots: BTreeSet<Root> = BTreeSet::new();
    let mut bad_roots: HashSet<Root> = HashSet::new();
    for (w, f) in p.terms() {
        for fac in f.den() {
            let admissible = fac.target == one && fac.mult == 1 && d.is_real_root(fac.root.coords());
            if admissible {
                pole_roots.insert(fac.root.clone());
            } else {
                if fac.target == one {
                    bad_roots.insert(fac.root.clone());
                }
                violations.push(Violation {
                    condition: Condition::Poles,
                    root: fac.root.clone(),
                    weyl: w.clone(),
                    witness: format!(
                        "factor (t^{} - ({}))^{} in {}",
                        fac.root, fac.target, fac.mult, f
                    ),
                });
            }
        }
    }

    for alpha in pole_roots.iter().filter(|a| !bad_roots.contains(*a)) {
        let s = d.reflection(alpha).expect("pole roots are real");
        let mut seen: HashSet<WeylElt> = HashSet::new();
        for (w, f) in p.terms() {
            if f.pole_order(alpha, &one) == 0 || seen.contains(w) {
                continue;
            }
            let partner = d.mul(&s, w);
            seen.insert(w.clone());
            seen.insert(partner.clone());
            let sum = f + &p.coefficient(&partner);
            if sum.pole_order(alpha, &one) > 0 {
                let res = sum
                    .residue(alpha, &one)
                    .map_or_else(|| "pole of higher order".to_string(), |r| r.numerator().to_string());
                violations.push(Violation {
                    condition: Condition::Residues,
                    root: alpha.clone(),
                    weyl: w.clone(),
                    witness: format!("Res(f_w) + Res(f_{{s_α w}}) = {res}, with s_α w = {partner}"),
                });
            }
        }
    }

    if level == Level::Hq {
        let target = QScalar::q_pow(-2);
        for (w, f) in p.terms() {
            for alpha in d.inversion_set(w) {
                if !f.vanishes_on(&alpha, &target) {
                    violations.push(Violation {
                        condition: Condition::Vanishing,
                        root: alpha.clone(),
                        weyl: w.clone(),
                        witness: restriction_witness(f, &alpha, &target),
                    });
                }
            }
        }
    }

    MembershipReport { level, violations }
}

fn restriction_witness(f: &RatFunc, alpha: &Root, target: &QScalar) -> String {
    if f.pole_order(alpha, target) > 0 {
        return format!("pole along t^{alpha} = {target}");
    }
    let frame = BinomialFrame::for_character(alpha.character(), target.clone()).expect("nonzero root");
    format!("numerator mod (t^{alpha} - {target}) = {}", frame.reduce(f.num()))
}

/// `Δ^{-1} P Δ ∈ H̃`, which for `P ∈ H̃` is equivalent to `P ∈ H_q` in
/// finite type.
pub fn delta_criterion(p: &AlgebraElement) -> Result<bool, Error> {
    p.datum().require_finite()?;
    let conj = p.conjugate_by_delta()?;
    Ok(check_membership(&conj, Level::Htilde).element_ok())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::demazure::sigma;
    use crate::laurent::{LaurentPoly, RootFactor};
    use crate::rootdata::RootDatum;

    #[test]
    fn sigma_is_in_hq() {
        for name in ["A1", "A2", "B2", "A1aff"] {
            let d = RootDatum::preset(name).unwrap();
            for l in d.labels() {
                let r = check_membership(&sigma(&d, l).unwrap(), Level::Hq);
                assert!(r.element_ok(), "{name} σ_{l}: {r:?}");
            }
        }
    }

    #[test]
    fn single_pole_fails_residue_condition() {
        let d = RootDatum::preset("A1").unwrap();
        let f = RatFunc::new(
            LaurentPoly::one(1),
            vec![RootFactor::new(d.simple_root(0), QScalar::one(), 1)],
        );
        let p = AlgebraElement::function(&d, f.clone());
        let r = check_membership(&p, Level::Htilde);
        assert!(r.cites(Condition::Residues));

        let s = d.generator(1).unwrap();
        let q = &p - &AlgebraElement::term(&d, s, f);
        assert!(check_membership(&q, Level::Htilde).element_ok());
        let r = check_membership(&q, Level::Hq);
        assert!(r.cites(Condition::Vanishing));
        assert!(!r.cites(Condition::Residues));
        assert!(!delta_criterion(&q).unwrap());
        assert!(delta_criterion(&sigma(&d, 1).unwrap()).unwrap());
        assert!(delta_criterion(&AlgebraElement::character(&d, &[1])).unwrap());
    }

    #[test]
    fn double_pole_fails_pole_condition() {
        let d = RootDatum::preset("A1").unwrap();
        let f = RatFunc::new(
            LaurentPoly::one(1),
            vec![RootFactor::new(d.simple_root(0), QScalar::one(), 2)],
        );
        let r = check_membership(&AlgebraElement::function(&d, f), Level::Htilde);
        assert!(r.cites(Condition::Poles));
    }
}
