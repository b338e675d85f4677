use std::f64::consts::PI;

use num_complex::Complex64;

use super::EllipticError;

/// Largest supported derivative order of `℘`.
pub const MAX_DERIVATIVE: usize = 7;

/// Rows of the lattice sum stop once the remaining tail is below this bound.
const TAIL_BOUND: f64 = 1e-15;
const MAX_ROWS: i64 = 20_000;
/// Points closer than this (relative to `|ω₁|`) to a pole are rejected.
const POLE_RADIUS: f64 = 1e-12;

/// An elliptic curve `ℂ/Λ` with `Λ = ℤω₁ + ℤω₂`, the order-two point
/// `ξ = ω₁/2` and a point `q` with `q^{-2}` read additively as `−2q`.
#[derive(Clone, Debug)]
pub struct EllipticCurve {
    omega1: Complex64,
    omega2: Complex64,
    tau: Complex64,
    q_point: Complex64,
    /// `r_m` with `d^m/dz^m csc²(πz) = π^m csc²(πz) r_m(cot πz)`.
    polys: Vec<Vec<f64>>,
    /// `π²/3 + Σ_{n≠0} π² csc²(πnτ)`.
    wp_constant: Complex64,
    e: [Complex64; 3],
    sn_q: Complex64,
}

impl EllipticCurve {
    /// Periods `(1, τ)`.
    pub fn new(tau: Complex64, q_point: Complex64) -> Result<Self, EllipticError> {
        Self::with_periods(Complex64::new(1.0, 0.0), tau, q_point)
    }

    pub fn with_periods(
        omega1: Complex64,
        omega2: Complex64,
        q_point: Complex64,
    ) -> Result<Self, EllipticError> {
        if omega1.norm() == 0.0 || !(omega2 / omega1).im.is_finite() {
            return Err(EllipticError::InvalidParams("ω₁ must be nonzero".into()));
        }
        let tau = omega2 / omega1;
        if tau.im <= 0.0 {
            return Err(EllipticError::InvalidParams(format!(
                "Im(ω₂/ω₁) must be positive, got τ = {tau}"
            )));
        }
        let mut polys = vec![vec![1.0]];
        for m in 0..MAX_DERIVATIVE {
            polys.push(next_poly(&polys[m]));
        }
        let mut curve = EllipticCurve {
            omega1,
            omega2,
            tau,
            q_point,
            polys,
            wp_constant: Complex64::new(0.0, 0.0),
            e: [Complex64::new(0.0, 0.0); 3],
            sn_q: Complex64::new(0.0, 0.0),
        };
        curve.wp_constant = curve.lattice_constant()?;
        let half = |c: Complex64| curve.wp(c * 0.5, 0);
        curve.e = [half(omega1)?, half(omega2)?, half(omega1 + omega2)?];

        let target = curve.q_inv_sq();
        if curve.near_lattice(q_point * 2.0) {
            return Err(EllipticError::InvalidParams(format!("2q lies in Λ for q = {q_point}")));
        }
        for (k, p) in curve.two_torsion().iter().enumerate() {
            if curve.near_lattice(target - p) {
                let what = ["0", "ξ", "ω₂/2", "(ω₁+ω₂)/2"][k];
                return Err(EllipticError::InvalidParams(format!(
                    "−2q is congruent to {what}; sn(q^-2) must be finite and nonzero"
                )));
            }
        }
        curve.sn_q = curve.sn(target)?;
        Ok(curve)
    }

    pub fn omega1(&self) -> Complex64 {
        self.omega1
    }

    pub fn omega2(&self) -> Complex64 {
        self.omega2
    }

    pub fn tau(&self) -> Complex64 {
        self.tau
    }

    pub fn q_point(&self) -> Complex64 {
        self.q_point
    }

    pub fn xi(&self) -> Complex64 {
        self.omega1 * 0.5
    }

    /// `q^{-2}` on the additive uniformization.
    pub fn q_inv_sq(&self) -> Complex64 {
        self.q_point * -2.0
    }

    /// `sn(q^{-2})`.
    pub fn sn_q(&self) -> Complex64 {
        self.sn_q
    }

    /// `e₁ = ℘(ξ)`, `e₂ = ℘(ω₂/2)`, `e₃ = ℘((ω₁+ω₂)/2)`.
    pub fn roots(&self) -> [Complex64; 3] {
        self.e
    }

    /// `0, ξ, ω₂/2, (ω₁+ω₂)/2`.
    pub fn two_torsion(&self) -> [Complex64; 4] {
        [
            Complex64::new(0.0, 0.0),
            self.omega1 * 0.5,
            self.omega2 * 0.5,
            (self.omega1 + self.omega2) * 0.5,
        ]
    }

    pub fn min_period(&self) -> f64 {
        self.omega1.norm().min(self.omega2.norm())
    }

    /// Lattice coordinates `(x, y)` with `z = x ω₁ + y ω₂`.
    fn coords(&self, z: Complex64) -> (f64, f64) {
        let u = z / self.omega1;
        let y = u.im / self.tau.im;
        (u.re - y * self.tau.re, y)
    }

    /// Representative of `z` with lattice coordinates in `[-1/2, 1/2)`.
    pub fn reduce(&self, z: Complex64) -> Complex64 {
        let (x, y) = self.coords(z);
        let (x, y) = (x - (x + 0.5).floor(), y - (y + 0.5).floor());
        self.omega1 * x + self.omega2 * y
    }

    /// Distance from `z` to the nearest lattice point.
    pub fn lattice_distance(&self, z: Complex64) -> f64 {
        let r = self.reduce(z);
        let mut best = f64::INFINITY;
        for a in -1..=1 {
            for b in -1..=1 {
                best = best.min((r - self.omega1 * a as f64 - self.omega2 * b as f64).norm());
            }
        }
        best
    }

    fn near_lattice(&self, z: Complex64) -> bool {
        self.lattice_distance(z) <= POLE_RADIUS * self.omega1.norm()
    }

    /// `℘^{(m)}(z)`.
    pub fn wp(&self, z: Complex64, m: usize) -> Result<Complex64, EllipticError> {
        if m > MAX_DERIVATIVE {
            return Err(EllipticError::DerivativeOrder(m));
        }
        if self.near_lattice(z) {
            return Err(EllipticError::Pole(z));
        }
        let u = self.reduce(z) / self.omega1;
        let value = self.wp_normalized(u, m)?;
        Ok(value / self.omega1.powi(m as i32 + 2))
    }

    /// `℘^{(m)}` for the lattice `ℤ + ℤτ`, summed row by row:
    /// `Σ_n π² csc²(π(u + nτ))` differentiated `m` times.
    fn wp_normalized(&self, u: Complex64, m: usize) -> Result<Complex64, EllipticError> {
        let poly = &self.polys[m];
        let mut sum = self.row(u, poly);
        let step = self.tau.im;
        let ratio = (-2.0 * PI * step).exp();
        for n in 1..=MAX_ROWS {
            let shift = self.tau * n as f64;
            sum += self.row(u + shift, poly) + self.row(u - shift, poly);
            let next = (n + 1) as f64 * step - u.im.abs();
            if next > 0.0 && 2.0 * row_bound(next, poly) / (1.0 - ratio) < TAIL_BOUND {
                let scale = PI.powi(m as i32 + 2);
                let value = sum * scale;
                return Ok(if m == 0 { value - self.wp_constant } else { value });
            }
        }
        Err(EllipticError::InvalidParams(format!(
            "lattice sum did not converge for τ = {}",
            self.tau
        )))
    }

    fn row(&self, w: Complex64, poly: &[f64]) -> Complex64 {
        let s = (w * PI).sin();
        let csc2 = (s * s).inv();
        let cot = (w * PI).cos() / s;
        csc2 * eval_poly(poly, cot)
    }

    fn lattice_constant(&self) -> Result<Complex64, EllipticError> {
        let poly = &self.polys[0];
        let mut sum = Complex64::new(1.0 / 3.0, 0.0);
        let ratio = (-2.0 * PI * self.tau.im).exp();
        for n in 1..=MAX_ROWS {
            let w = self.tau * n as f64;
            sum += self.row(w, poly) + self.row(-w, poly);
            if 2.0 * row_bound((n + 1) as f64 * self.tau.im, poly) / (1.0 - ratio) < TAIL_BOUND {
                return Ok(sum * PI * PI);
            }
        }
        Err(EllipticError::InvalidParams(format!(
            "lattice constant did not converge for τ = {}",
            self.tau
        )))
    }

    /// Jacobi sine `sn = −℘′ / (2(℘ − e₂)(℘ − e₃))`: simple zeros at `0` and `ξ`,
    /// simple poles at the other two points of order two, `sn′(0) = 1`.
    pub fn sn(&self, z: Complex64) -> Result<Complex64, EllipticError> {
        if self.near_lattice(z) {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let p = self.wp(z, 0)?;
        let dp = self.wp(z, 1)?;
        let den = (p - self.e[1]) * (p - self.e[2]) * 2.0;
        if den.norm() == 0.0 {
            return Err(EllipticError::Pole(z));
        }
        Ok(-dp / den)
    }

    /// `1/sn(z)`, finite at the poles of `sn`.
    pub fn sn_recip(&self, z: Complex64) -> Result<Complex64, EllipticError> {
        if self.near_lattice(z) || self.near_lattice(z - self.xi()) {
            return Err(EllipticError::Pole(z));
        }
        let p = self.wp(z, 0)?;
        let dp = self.wp(z, 1)?;
        Ok(-(p - self.e[1]) * (p - self.e[2]) * 2.0 / dp)
    }
}

/// `r_{m+1}(c) = −(2c r_m(c) + (1 + c²) r_m′(c))`.
fn next_poly(r: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; r.len() + 1];
    for (k, &a) in r.iter().enumerate() {
        out[k + 1] -= 2.0 * a;
        if k >= 1 {
            let d = k as f64 * a;
            out[k - 1] -= d;
            out[k + 1] -= d;
        }
    }
    out
}

fn eval_poly(poly: &[f64], x: Complex64) -> Complex64 {
    poly.iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
}

/// Bound on `|csc²(πw) r(cot πw)|` when `|Im w| ≥ y > 0`.
fn row_bound(y: f64, poly: &[f64]) -> f64 {
    let e = (-2.0 * PI * y).exp();
    let csc2 = 4.0 * e / (1.0 - e).powi(2);
    let cot = (1.0 + e) / (1.0 - e);
    let r: f64 = poly
        .iter()
        .enumerate()
        .map(|(k, c)| c.abs() * cot.powi(k as i32))
        .sum();
    csc2 * r
}
