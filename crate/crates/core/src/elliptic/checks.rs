use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{build_elliptic_sigma, EllipticCurve, EllipticError, EllipticOperator};
use crate::rootdata::RootDatum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Bound {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericCheck {
    pub check: String,
    pub instance: String,
    pub value: f64,
    pub bound: Bound,
    pub tolerance: f64,
    pub pass: bool,
}

impl NumericCheck {
    pub fn new(check: &str, instance: impl Into<String>, value: f64, bound: Bound, tolerance: f64) -> Self {
        let pass = match bound {
            Bound::AtMost => value <= tolerance,
            Bound::AtLeast => value >= tolerance,
        };
        NumericCheck {
            check: check.to_string(),
            instance: instance.into(),
            value,
            bound,
            tolerance,
            pass,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct NumericReport {
    pub checks: Vec<NumericCheck>,
}

impl NumericReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn find(&self, check: &str) -> impl Iterator<Item = &NumericCheck> + '_ {
        let check = check.to_string();
        self.checks.iter().filter(move |c| c.check == check)
    }
}

#[derive(Clone, Debug)]
pub struct EllipticConfig {
    pub samples: usize,
    pub seed: u64,
    pub involution_tol: f64,
    pub residue_tol: f64,
    pub vanishing_tol: f64,
    pub braid_threshold: f64,
    pub sn_tol: f64,
    pub m_max: usize,
}

impl Default for EllipticConfig {
    fn default() -> Self {
        EllipticConfig {
            samples: 100,
            seed: 0,
            involution_tol: 1e-9,
            residue_tol: 1e-8,
            vanishing_tol: 1e-12,
            braid_threshold: 1e-3,
            sn_tol: 1e-10,
            m_max: 6,
        }
    }
}

/// Seeded points of `(ℂ/Λ)^n` whose root coordinates `t^β` stay at least
/// `margin` away from every point of order two.
pub fn sample_points(
    curve: &EllipticCurve,
    datum: &RootDatum,
    count: usize,
    seed: u64,
) -> Result<Vec<Vec<Complex64>>, EllipticError> {
    let roots: Vec<Vec<i64>> = datum.positive_roots()?.iter().map(|r| r.coords().to_vec()).collect();
    let margin = 0.05 * curve.min_period();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let mut attempts = 0usize;
    while out.len() < count {
        attempts += 1;
        if attempts > 1000 * count.max(1) {
            return Err(EllipticError::NoSamples);
        }
        let z: Vec<Complex64> = (0..datum.num_nodes())
            .map(|_| curve.omega1() * rng.gen::<f64>() + curve.omega2() * rng.gen::<f64>())
            .collect();
        let clear = roots.iter().all(|c| {
            let v: Complex64 = c.iter().zip(&z).map(|(&k, &x)| x * k as f64).sum();
            curve
                .two_torsion()
                .iter()
                .all(|p| curve.lattice_distance(v - p) >= margin)
        });
        if clear {
            out.push(z);
        }
    }
    Ok(out)
}

/// `sn′(0)` by Richardson extrapolation of central differences at `h` and `h/2`.
pub fn sn_derivative_at_zero(curve: &EllipticCurve, h: f64) -> Result<Complex64, EllipticError> {
    let d = |h: f64| -> Result<Complex64, EllipticError> {
        let step = curve.omega1() * h;
        Ok((curve.sn(step)? - curve.sn(-step)?) / (step * 2.0))
    };
    let (d1, d2) = (d(h)?, d(h / 2.0)?);
    Ok((d2 * 4.0 - d1) / 3.0)
}

/// The defining properties of `sn`: `sn′(0) = 1`, zero at `ξ`, poles at the
/// other points of order two, oddness and periodicity on seeded samples.
pub fn sn_self_test(curve: &EllipticCurve, config: &EllipticConfig) -> Result<NumericReport, EllipticError> {
    let tol = config.sn_tol;
    let mut checks = vec![
        NumericCheck::new(
            "sn'(0)=1",
            "richardson h=1e-3",
            (sn_derivative_at_zero(curve, 1e-3)? - 1.0).norm(),
            Bound::AtMost,
            tol,
        ),
        NumericCheck::new("sn(ξ)=0", "ξ=ω1/2", curve.sn(curve.xi())?.norm(), Bound::AtMost, tol),
    ];
    let t = curve.two_torsion();
    for (name, p) in [("ω2/2", t[2]), ("(ω1+ω2)/2", t[3])] {
        checks.push(NumericCheck::new("1/sn=0 at pole", name, curve.sn_recip(p)?.norm(), Bound::AtMost, 1e-8));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut odd: f64 = 0.0;
    let mut periodic: f64 = 0.0;
    let margin = 0.05 * curve.min_period();
    let mut taken = 0;
    while taken < 20 {
        let z = curve.omega1() * rng.gen::<f64>() + curve.omega2() * rng.gen::<f64>();
        if t.iter().any(|p| curve.lattice_distance(z - p) < margin) {
            continue;
        }
        taken += 1;
        let s = curve.sn(z)?;
        odd = odd.max((curve.sn(-z)? + s).norm() / s.norm().max(1.0));
        for w in [curve.omega1(), curve.omega2()] {
            periodic = periodic.max((curve.wp(z + w, 0)? - curve.wp(z, 0)?).norm());
        }
    }
    checks.push(NumericCheck::new("sn(-z)=-sn(z)", "20 samples", odd, Bound::AtMost, tol));
    checks.push(NumericCheck::new("℘(z+ω)=℘(z)", "20 samples", periodic, Bound::AtMost, tol));
    Ok(NumericReport { checks })
}

fn max_deviation(
    lhs: &EllipticOperator,
    rhs: &EllipticOperator,
    points: &[Vec<Complex64>],
) -> Result<f64, EllipticError> {
    points
        .par_iter()
        .map(|z| lhs.deviation(rhs, z))
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}

/// `σ_i² = [1]` for every node, coefficientwise at seeded points, followed by
/// the self-test of `sn`.
pub fn check_involution(
    curve: &EllipticCurve,
    datum: &Arc<RootDatum>,
    config: &EllipticConfig,
) -> Result<NumericReport, EllipticError> {
    let sigmas = build_elliptic_sigma(curve, datum)?;
    let points = sample_points(curve, datum, config.samples, config.seed)?;
    let one = EllipticOperator::identity(datum);
    let mut report = sn_self_test(curve, config)?;
    for (s, label) in sigmas.iter().zip(datum.labels()) {
        let dev = max_deviation(&s.mul(s), &one, &points)?;
        report.checks.push(NumericCheck::new(
            "σ_i^2=[1]",
            format!("i={label}, {} points", points.len()),
            dev,
            Bound::AtMost,
            config.involution_tol,
        ));
    }
    Ok(report)
}

/// `max ‖σ₁σ₂σ₁ − σ₂σ₁σ₂‖` over seeded points; passes when the braid relation
/// visibly fails.
pub fn check_braid_failure(
    curve: &EllipticCurve,
    datum: &Arc<RootDatum>,
    config: &EllipticConfig,
) -> Result<NumericReport, EllipticError> {
    if datum.num_nodes() != 2 {
        return Err(EllipticError::RankMismatch {
            expected: 2,
            got: datum.num_nodes(),
        });
    }
    let sigmas = build_elliptic_sigma(curve, datum)?;
    let m = datum.cartan().get(0, 1) * datum.cartan().get(1, 0);
    let order = match m {
        0 => 2,
        1 => 3,
        2 => 4,
        _ => 6,
    };
    let word = |first: usize| -> EllipticOperator {
        (0..order).fold(EllipticOperator::identity(datum), |acc, k| {
            acc.mul(&sigmas[(first + k) % 2])
        })
    };
    let points = sample_points(curve, datum, config.samples, config.seed)?;
    let dev = max_deviation(&word(0), &word(1), &points)?;
    Ok(NumericReport {
        checks: vec![NumericCheck::new(
            "braid deviation",
            format!("{order} factors, {} points", points.len()),
            dev,
            Bound::AtLeast,
            config.braid_threshold,
        )],
    })
}

type Fun = Box<dyn Fn(Complex64) -> Result<Complex64, EllipticError> + Send + Sync>;

/// A section `f_1(t)[1] + f_s(t)[s]` in the rank-one case.
pub struct Prop46Element {
    pub name: String,
    pub f1: Fun,
    pub fs: Fun,
}

/// `[1]`, `σ`, `℘^{(m)}(t−ξ)[1]` and `(℘^{(m)}(t−ξ) − ℘^{(m)}(q^{-2}−ξ))[s]`
/// for `m ≤ m_max`.
pub fn prop46_elements(curve: &EllipticCurve, m_max: usize) -> Result<Vec<Prop46Element>, EllipticError> {
    if m_max > 6 {
        return Err(EllipticError::DerivativeOrder(m_max));
    }
    let zero = || -> Fun { Box::new(|_| Ok(Complex64::new(0.0, 0.0))) };
    let c = Arc::new(curve.clone());
    let mut out = vec![Prop46Element {
        name: "[1]".into(),
        f1: Box::new(|_| Ok(Complex64::new(1.0, 0.0))),
        fs: zero(),
    }];
    let (a, b) = (c.clone(), c.clone());
    out.push(Prop46Element {
        name: "σ".into(),
        f1: Box::new(move |z| Ok(a.sn_q() * a.sn_recip(z)?)),
        fs: Box::new(move |z| Ok(Complex64::new(1.0, 0.0) - b.sn_q() * b.sn_recip(z)?)),
    });
    for m in 0..=m_max {
        let a = c.clone();
        out.push(Prop46Element {
            name: format!("℘^({m})(t-ξ)[1]"),
            f1: Box::new(move |z| a.wp(z - a.xi(), m)),
            fs: zero(),
        });
        let a = c.clone();
        let shift = c.wp(c.q_inv_sq() - c.xi(), m)?;
        out.push(Prop46Element {
            name: format!("(℘^({m})(t-ξ)-℘^({m})(q^-2-ξ))[s]"),
            f1: zero(),
            fs: Box::new(move |z| Ok(a.wp(z - a.xi(), m)? - shift)),
        });
    }
    Ok(out)
}

/// `(1/2πi) ∮ f` over a circle, by the trapezoid rule.
pub fn contour_residue(
    f: &dyn Fn(Complex64) -> Result<Complex64, EllipticError>,
    center: Complex64,
    radius: f64,
    nodes: usize,
) -> Result<Complex64, EllipticError> {
    let mut sum = Complex64::new(0.0, 0.0);
    for k in 0..nodes {
        let e = Complex64::from_polar(radius, 2.0 * PI * k as f64 / nodes as f64);
        sum += f(center + e)? * e;
    }
    Ok(sum / nodes as f64)
}

/// Contour radius around `0`, halved until no other candidate pole (lattice
/// translates of the points of order two) lies within twice the radius.
fn residue_radius(curve: &EllipticCurve) -> f64 {
    let mut radius = 0.05 * curve.min_period();
    let mut nearest = f64::INFINITY;
    for a in -2i32..=2 {
        for b in -2i32..=2 {
            if a != 0 || b != 0 {
                let p = (curve.omega1() * a as f64 + curve.omega2() * b as f64) * 0.5;
                nearest = nearest.min(p.norm());
            }
        }
    }
    while 2.0 * radius >= nearest {
        radius /= 2.0;
    }
    radius
}

/// Growth of `max |f|` from a circle of radius `r` to one of radius `r/4`
/// around `center`; stays near 1 where `f` is regular.
fn pole_growth(
    f: &dyn Fn(Complex64) -> Result<Complex64, EllipticError>,
    center: Complex64,
    radius: f64,
) -> Result<f64, EllipticError> {
    let ring = |r: f64| -> Result<f64, EllipticError> {
        let mut m: f64 = 0.0;
        for k in 0..16 {
            m = m.max(f(center + Complex64::from_polar(r, 2.0 * PI * k as f64 / 16.0))?.norm());
        }
        Ok(m)
    };
    let outer = ring(radius)?;
    let inner = ring(radius / 4.0)?;
    Ok(match (outer == 0.0, inner == 0.0) {
        (true, true) => 0.0,
        (true, false) => f64::INFINITY,
        _ => inner / outer,
    })
}

/// For each listed element: residue cancellation at `0`, no poles away from
/// `{0, ξ}` and vanishing of `f_s` at `q^{-2}`.
pub fn verify_prop46(curve: &EllipticCurve, config: &EllipticConfig) -> Result<NumericReport, EllipticError> {
    let elements = prop46_elements(curve, config.m_max)?;
    let radius = residue_radius(curve);
    let t = curve.two_torsion();
    let mut centers = vec![t[2], t[3]];
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let margin = 0.1 * curve.min_period();
    while centers.len() < 8 {
        let z = curve.omega1() * rng.gen::<f64>() + curve.omega2() * rng.gen::<f64>();
        if curve.lattice_distance(z) >= margin && curve.lattice_distance(z - curve.xi()) >= margin {
            centers.push(z);
        }
    }
    let pole_radius = 0.02 * curve.min_period();

    let per_element: Result<Vec<Vec<NumericCheck>>, EllipticError> = elements
        .par_iter()
        .map(|e| {
            let zero = Complex64::new(0.0, 0.0);
            let r1 = contour_residue(&e.f1, zero, radius, 256)?;
            let rs = contour_residue(&e.fs, zero, radius, 256)?;
            let mut growth: f64 = 0.0;
            for &c in &centers {
                growth = growth.max(pole_growth(&e.f1, c, pole_radius)?);
                growth = growth.max(pole_growth(&e.fs, c, pole_radius)?);
            }
            Ok(vec![
                NumericCheck::new("Res f_1 + Res f_s = 0", e.name.clone(), (r1 + rs).norm(), Bound::AtMost, config.residue_tol),
                NumericCheck::new("regular off {0, ξ}", e.name.clone(), growth, Bound::AtMost, 2.0),
                NumericCheck::new(
                    "f_s(q^-2) = 0",
                    e.name.clone(),
                    (e.fs)(curve.q_inv_sq())?.norm(),
                    Bound::AtMost,
                    config.vanishing_tol,
                ),
            ])
        })
        .collect();
    Ok(NumericReport {
        checks: per_element?.into_iter().flatten().collect(),
    })
}
