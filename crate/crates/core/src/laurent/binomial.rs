//! Division by a binomial `t^{v/2} − c`.
//!
//! Write `v = d·v'` with `v'` primitive and pick an integer covector `φ`
//! with `φ·v' = 1`. Then `u = t^{v'/2}` is a coordinate in a unimodular
//! change of monomial basis, the binomial becomes `u^d − c`, and the
//! `u`-degree of a monomial `t^{x/2}` is `φ·x`. Remainders are the unique
//! representatives whose `u`-degrees lie in `[0, d)`.

use std::collections::HashMap;

use num_integer::Integer;

use super::{ExpVec, LaurentError, LaurentPoly, QScalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinomialFrame {
    v: ExpVec,
    d: i64,
    phi: Vec<i64>,
    target: QScalar,
}

/// `φ` with `φ·w = gcd(w)` (nonnegative gcd).
fn bezout(w: &[i64]) -> (i64, Vec<i64>) {
    let mut g = 0i64;
    let mut coef = vec![0i64; w.len()];
    for (k, &x) in w.iter().enumerate() {
        if x == 0 {
            continue;
        }
        if g == 0 {
            g = x;
            coef[k] = 1;
            continue;
        }
        let e = g.extended_gcd(&x);
        for c in coef.iter_mut().take(k) {
            *c *= e.x;
        }
        coef[k] = e.y;
        g = e.gcd;
    }
    if g < 0 {
        g = -g;
        for c in coef.iter_mut() {
            *c = -*c;
        }
    }
    (g, coef)
}

impl BinomialFrame {
    /// Frame for `t^{v/2} − c` with doubled exponent `v`.
    pub fn new(v: ExpVec, target: QScalar) -> Result<Self, LaurentError> {
        if v.is_zero() || target.is_zero() {
            return Err(LaurentError::DegenerateBinomial);
        }
        let (d, phi) = bezout(&v.0);
        Ok(BinomialFrame { v, d, phi, target })
    }

    /// Frame for `t^λ − c` with an integral character `λ`.
    pub fn for_character(lambda: &[i64], target: QScalar) -> Result<Self, LaurentError> {
        Self::new(ExpVec::from_character(lambda), target)
    }

    /// `d`, the number of monomials in a remainder class per coset.
    pub fn degree(&self) -> i64 {
        self.d
    }

    pub fn target(&self) -> &QScalar {
        &self.target
    }

    pub fn binomial(&self) -> LaurentPoly {
        let r = self.v.rank();
        LaurentPoly::term(QScalar::one(), self.v.clone())
            - LaurentPoly::constant(r, self.target.clone())
    }

    /// `(quotient, remainder)` with `p = quotient·(t^{v/2} − c) + remainder`.
    pub fn div_rem(&self, p: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        let rank = p.rank();
        let mut quo = LaurentPoly::zero(rank);
        let mut rem = LaurentPoly::zero(rank);
        let mut powers: HashMap<i64, QScalar> = HashMap::new();
        let mut cpow = |k: i64| {
            powers
                .entry(k)
                .or_insert_with(|| self.target.pow(k))
                .clone()
        };
        for (x, a) in p.terms() {
            let k = x.dot(&self.phi).div_euclid(self.d);
            let y = x.sub(&self.v.scaled(k));
            rem.add_term(y.clone(), a * &cpow(k));
            if k > 0 {
                for j in 0..k {
                    quo.add_term(y.add(&self.v.scaled(k - 1 - j)), a * &cpow(j));
                }
            } else if k < 0 {
                let m = -k;
                for j in 0..m {
                    quo.add_term(y.sub(&self.v.scaled(j + 1)), -(a * &cpow(j - m)));
                }
            }
        }
        (quo, rem)
    }

    /// The canonical representative of `p` modulo the binomial.
    pub fn reduce(&self, p: &LaurentPoly) -> LaurentPoly {
        self.div_rem(p).1
    }

    /// Exact quotient, or the nonzero remainder.
    pub fn divide(&self, p: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        let (q, r) = self.div_rem(p);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(LaurentError::NotDivisible { remainder: r })
        }
    }

    pub fn divides(&self, p: &LaurentPoly) -> bool {
        self.reduce(p).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ch(l: &[i64]) -> LaurentPoly {
        LaurentPoly::character(l)
    }

    #[test]
    fn spec_examples() {
        let alpha = [2, -1];
        let f = BinomialFrame::for_character(&alpha, QScalar::one()).unwrap();
        let p = ch(&[4, -2]) - LaurentPoly::one(2);
        assert_eq!(f.divide(&p).unwrap(), ch(&alpha) + LaurentPoly::one(2));

        let g = BinomialFrame::for_character(&alpha, QScalar::q_pow(-1)).unwrap();
        let p = LaurentPoly::term(QScalar::q_pow(2), ExpVec::from_character(&alpha))
            - LaurentPoly::constant(2, QScalar::q());
        assert_eq!(g.divide(&p).unwrap(), LaurentPoly::constant(2, QScalar::q_pow(2)));

        let p = ch(&alpha) - LaurentPoly::constant(2, QScalar::q());
        match f.divide(&p) {
            Err(LaurentError::NotDivisible { remainder }) => {
                assert_eq!(remainder, LaurentPoly::constant(2, QScalar::one() - QScalar::q()))
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_primitive_roots() {
        // α = (2,-2) is twice a primitive vector; t^α − 1 does not divide t^{α/2} − 1
        let f = BinomialFrame::for_character(&[2, -2], QScalar::one()).unwrap();
        assert_eq!(f.degree(), 4);
        assert!(!f.divides(&(ch(&[1, -1]) - LaurentPoly::one(2))));
        let p = ch(&[4, -4]) - LaurentPoly::one(2);
        assert!(f.divides(&p));
    }

    #[test]
    fn bezout_identity() {
        for w in [vec![4, 6, -9], vec![0, -3], vec![5], vec![-2, 0, 2]] {
            let (g, phi) = bezout(&w);
            let dot: i64 = w.iter().zip(&phi).map(|(a, b)| a * b).sum();
            assert_eq!(dot, g);
            assert!(g > 0);
        }
    }

    fn small_poly(rank: usize) -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((prop::collection::vec(-6i64..=6, rank), -3i64..=3, -2i64..=2), 0..5)
            .prop_map(move |ts| {
                LaurentPoly::from_terms(
                    rank,
                    ts.into_iter()
                        .map(|(e, c, s)| (ExpVec(e), QScalar::from_int(c) * QScalar::q_pow(s))),
                )
            })
    }

    proptest! {
        #[test]
        fn division_roundtrip(p in small_poly(2), v in prop::collection::vec(-3i64..=3, 2), s in -2i64..=2) {
            prop_assume!(v.iter().any(|&x| x != 0));
            let f = BinomialFrame::new(ExpVec(v), QScalar::q_pow(s)).unwrap();
            let (q, r) = f.div_rem(&p);
            prop_assert_eq!(&(&q * &f.binomial()) + &r, p.clone());
            // remainder is canonical: reducing again changes nothing
            prop_assert_eq!(f.reduce(&r), r.clone());
            // products are divisible
            prop_assert!(f.divides(&(&p * &f.binomial())));
        }
    }
}
