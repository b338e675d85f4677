//! Seeded random generators for test and verification inputs.
//!
//! All draws come from a ChaCha stream, so a seed fixes every sample across
//! platforms.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::AlgebraElement;
use crate::demazure::sigma;
use crate::laurent::{LaurentPoly, QScalar, RatFunc, RootFactor};
use crate::rootdata::{Root, RootDatum, WeylElt};

pub struct Sampler {
    datum: Arc<RootDatum>,
    rng: ChaCha8Rng,
    omegas: Vec<Vec<i64>>,
}

impl Sampler {
    pub fn new(datum: &Arc<RootDatum>, seed: u64) -> Self {
        let omegas = datum
            .fundamental_weights()
            .unwrap_or_else(|_| unit_vectors(datum.rank_x()));
        Sampler {
            datum: datum.clone(),
            rng: ChaCha8Rng::seed_from_u64(seed),
            omegas,
        }
    }

    pub fn datum(&self) -> &Arc<RootDatum> {
        &self.datum
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A nonzero scalar `(a + b q^k) / m` with small integers.
    pub fn scalar(&mut self) -> QScalar {
        loop {
            let a = self.rng.gen_range(-3..=3);
            let b = self.rng.gen_range(-2..=2);
            let k = self.rng.gen_range(-2..=2);
            let m = self.rng.gen_range(1..=3);
            let c = QScalar::laurent(&[(0, a), (k, b)])
                .div(&QScalar::from_int(m))
                .expect("nonzero divisor");
            if !c.is_zero() {
                return c;
            }
        }
    }

    /// A weight `Σ c_i ω_i` with `|c_i| ≤ 2`.
    pub fn weight(&mut self) -> Vec<i64> {
        let mut lambda = vec![0; self.datum.rank_x()];
        for w in &self.omegas {
            let c = self.rng.gen_range(-2..=2);
            for (l, x) in lambda.iter_mut().zip(w) {
                *l += c * x;
            }
        }
        lambda
    }

    /// A Laurent polynomial with up to `max_terms` terms of integral weight.
    pub fn poly(&mut self, max_terms: usize) -> LaurentPoly {
        let k = self.rng.gen_range(1..=max_terms.max(1));
        let mut p = LaurentPoly::zero(self.datum.rank_x());
        for _ in 0..k {
            let lambda = self.weight();
            let c = self.scalar();
            p = p + LaurentPoly::character(&lambda).scale(&c);
        }
        p
    }

    pub fn nonzero_poly(&mut self, max_terms: usize) -> LaurentPoly {
        loop {
            let p = self.poly(max_terms);
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn label(&mut self) -> usize {
        let labels: Vec<usize> = self.datum.labels().collect();
        *labels.choose(&mut self.rng).expect("at least one node")
    }

    pub fn weyl_element(&mut self, max_length: usize) -> WeylElt {
        let len = self.rng.gen_range(0..=max_length);
        let word: Vec<usize> = (0..len).map(|_| self.label()).collect();
        self.datum.from_word(&word).expect("labels in range")
    }

    /// A positive real root reached from a simple root by at most two reflections.
    pub fn positive_root(&mut self) -> Root {
        let i = self.rng.gen_range(0..self.datum.num_nodes());
        let mut beta = self.datum.simple_root(i);
        let w = self.weyl_element(2);
        let image = self.datum.act_on_root(&w, &beta);
        if image.is_positive() {
            beta = image;
        }
        beta
    }

    /// `Σ_k c_k t^{λ_k} σ_{i_k} + c t^λ`, a member of `H_q`.
    pub fn hq_element(&mut self) -> AlgebraElement {
        let d = self.datum.clone();
        let mut p = AlgebraElement::character(&d, &self.weight()).scale(&self.scalar());
        let k = self.rng.gen_range(1..=2);
        for _ in 0..k {
            let t = AlgebraElement::character(&d, &self.weight());
            let s = sigma(&d, self.label()).expect("label in range");
            p = &p + &(&t * &s).scale(&self.scalar());
        }
        p
    }

    /// `E + c t^μ (t^α − 1)^{-1} ([w] − [s_α w])` with `E ∈ H_q`. The added
    /// pair satisfies the residue condition but not the vanishing condition,
    /// so the result lies in `H̃` and never in `H_q`.
    pub fn htilde_only_element(&mut self) -> AlgebraElement {
        let d = self.datum.clone();
        let base = self.hq_element();
        let alpha = self.positive_root();
        let s = d.reflection(&alpha).expect("real root");
        let w = self.weyl_element(2);
        let f = RatFunc::new(
            LaurentPoly::character(&self.weight()).scale(&self.scalar()),
            vec![RootFactor::new(alpha, QScalar::one(), 1)],
        );
        let pair = AlgebraElement::from_terms(&d, [(w.clone(), f.clone()), (d.mul(&s, &w), -&f)]);
        &base + &pair
    }

    /// Random polynomial coefficients on elements of length at most `max_length`.
    pub fn coefficient_map(&mut self, max_length: usize) -> BTreeMap<WeylElt, LaurentPoly> {
        let elements = self.datum.elements_up_to_length(max_length);
        let k = self.rng.gen_range(1..=3.min(elements.len()));
        let mut out = BTreeMap::new();
        for w in elements.choose_multiple(&mut self.rng, k) {
            out.insert(w.clone(), self.nonzero_poly(2));
        }
        out
    }

    /// A rational function with simple poles at kernel divisors of positive roots.
    pub fn ratfunc(&mut self) -> RatFunc {
        let k = self.rng.gen_range(0..=2);
        let mut factors: Vec<RootFactor> = Vec::new();
        for _ in 0..k {
            let alpha = self.positive_root();
            let target = if self.rng.gen_bool(0.5) { QScalar::one() } else { QScalar::q_pow(-2) };
            factors.push(RootFactor::new(alpha, target, 1));
        }
        RatFunc::new(self.nonzero_poly(3), factors)
    }
}

fn unit_vectors(r: usize) -> Vec<Vec<i64>> {
    (0..r)
        .map(|i| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::membership::{check_membership, Level};

    #[test]
    fn seeded_draws_repeat() {
        let d = RootDatum::preset("A2").unwrap();
        let a = Sampler::new(&d, 7).hq_element();
        let b = Sampler::new(&d, 7).hq_element();
        assert_eq!(a, b);
    }

    #[test]
    fn htilde_only_elements_have_the_intended_level() {
        let d = RootDatum::preset("B2").unwrap();
        let mut s = Sampler::new(&d, 3);
        for _ in 0..5 {
            let p = s.htilde_only_element();
            assert!(check_membership(&p, Level::Htilde).element_ok());
            assert!(!check_membership(&p, Level::Hq).element_ok());
        }
    }
}
