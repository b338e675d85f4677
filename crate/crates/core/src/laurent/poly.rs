//! Laurent polynomials on the torus with ℚ(q) coefficients.
//!
//! Monomials are characters `t^λ` with `λ` in the half lattice `½X`; they are
//! keyed by the doubled exponent `2λ ∈ ℤ^r` so that half weights such as
//! `t^{α/2}` are exact.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{LaurentError, QScalar};

/// Doubled exponent vector: `ExpVec(v)` is the character `t^{v/2}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExpVec(pub Vec<i64>);

impl ExpVec {
    pub fn zero(rank: usize) -> Self {
        ExpVec(vec![0; rank])
    }

    /// The doubled vector of an integral character `λ`.
    pub fn from_character(lambda: &[i64]) -> Self {
        ExpVec(lambda.iter().map(|x| 2 * x).collect())
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `Some(λ)` when the exponent is an integral character.
    pub fn as_character(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|&x| if x % 2 == 0 { Some(x / 2) } else { None })
            .collect()
    }

    pub fn add(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ExpVec) -> ExpVec {
        ExpVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scaled(&self, k: i64) -> ExpVec {
        ExpVec(self.0.iter().map(|a| a * k).collect())
    }

    pub fn dot(&self, phi: &[i64]) -> i64 {
        self.0.iter().zip(phi).map(|(a, b)| a * b).sum()
    }
}

impl fmt::Debug for ExpVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    rank: usize,
    terms: BTreeMap<ExpVec, QScalar>,
}

impl LaurentPoly {
    pub fn zero(rank: usize) -> Self {
        LaurentPoly {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(rank: usize) -> Self {
        Self::constant(rank, QScalar::one())
    }

    pub fn constant(rank: usize, c: QScalar) -> Self {
        Self::term(c, ExpVec::zero(rank))
    }

    /// `c · t^{v/2}` for a doubled exponent `v`.
    pub fn term(c: QScalar, exp: ExpVec) -> Self {
        let rank = exp.rank();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { rank, terms }
    }

    /// The character `t^λ` for integral `λ`.
    pub fn character(lambda: &[i64]) -> Self {
        Self::term(QScalar::one(), ExpVec::from_character(lambda))
    }

    /// `t^λ − c`.
    pub fn binomial(lambda: &[i64], c: &QScalar) -> Self {
        Self::character(lambda) - Self::constant(lambda.len(), c.clone())
    }

    pub fn from_terms(rank: usize, items: impl IntoIterator<Item = (ExpVec, QScalar)>) -> Self {
        let mut p = Self::zero(rank);
        for (e, c) in items {
            assert_eq!(e.rank(), rank, "exponent rank mismatch");
            p.add_term(e, c);
        }
        p
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &QScalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &ExpVec) -> QScalar {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// Single-term polynomials `c · t^{v/2}`.
    pub fn as_monomial(&self) -> Option<(&ExpVec, &QScalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_zero())
    }

    pub fn add_term(&mut self, e: ExpVec, c: QScalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_rank(&self, other: &LaurentPoly) -> Result<(), LaurentError> {
        if self.rank != other.rank {
            return Err(LaurentError::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_rank(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<LaurentPoly, LaurentError> {
        self.check_rank(other)?;
        let mut out = LaurentPoly::zero(self.rank);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &QScalar) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.rank);
        }
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiply by the monomial `t^{v/2}`.
    pub fn shift(&self, v: &ExpVec) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, x)| (e.add(v), x.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.rank);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Apply an integer linear map to every exponent. The map must be
    /// injective on exponents (true for Weyl group actions).
    pub fn map_exponents(&self, f: impl Fn(&ExpVec) -> ExpVec) -> LaurentPoly {
        let mut terms = BTreeMap::new();
        let mut rank = self.rank;
        for (e, c) in &self.terms {
            let ne = f(e);
            rank = ne.rank();
            terms.insert(ne, c.clone());
        }
        LaurentPoly { rank, terms }
    }

    /// Smallest doubled exponent in each coordinate (the exponent of the
    /// monomial gcd), or `None` for zero.
    pub fn min_exponent(&self) -> Option<ExpVec> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |m, e| {
            ExpVec(m.0.iter().zip(&e.0).map(|(a, b)| *a.min(b)).collect())
        }))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("rank mismatch")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("rank mismatch")
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

fn fmt_exponent(f: &mut fmt::Formatter<'_>, e: &ExpVec) -> fmt::Result {
    write!(f, "t^[")?;
    for (i, x) in e.0.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        if x % 2 == 0 {
            write!(f, "{}", x / 2)?;
        } else {
            write!(f, "{x}/2")?;
        }
    }
    write!(f, "]")
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if e.is_zero() {
                write!(f, "({c})")?;
            } else if c.is_one() {
                fmt_exponent(f, e)?;
            } else {
                write!(f, "({c})·")?;
                fmt_exponent(f, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_and_products() {
        let l = [1, 0];
        let m = [0, 1];
        let a = LaurentPoly::character(&l);
        assert!((&a - &a).is_zero());
        assert_eq!(&a * &LaurentPoly::character(&m), LaurentPoly::character(&[1, 1]));
        // (q t^α − 1) · t^{−α} = q − t^{−α}
        let alpha = [2, -1];
        let p = LaurentPoly::term(QScalar::q(), ExpVec::from_character(&alpha)) - LaurentPoly::one(2);
        let r = &p * &LaurentPoly::character(&[-2, 1]);
        let expected = LaurentPoly::constant(2, QScalar::q()) - LaurentPoly::character(&[-2, 1]);
        assert_eq!(r, expected);
    }

    #[test]
    fn rank_mismatch_is_an_error() {
        let a = LaurentPoly::one(1);
        let b = LaurentPoly::one(2);
        assert!(matches!(a.try_add(&b), Err(LaurentError::RankMismatch { .. })));
        assert!(a.try_mul(&b).is_err());
    }

    #[test]
    fn half_weights_print() {
        let p = LaurentPoly::term(QScalar::q_pow(-1), ExpVec(vec![-1]));
        assert_eq!(p.to_string(), "(q^-1)·t^[-1/2]");
    }
}
