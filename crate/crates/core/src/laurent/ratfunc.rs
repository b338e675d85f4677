//! Rational functions `N / ∏ (t^α − c)^m` over positive real roots `α`.
//!
//! Distinct positive roots are never proportional and distinct targets give
//! coprime binomials, so the reduced form (no denominator factor divides the
//! numerator) is unique and structural equality is equality of functions.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{BinomialFrame, ExpVec, LaurentError, LaurentPoly, QScalar};
use crate::rootdata::{Root, RootDatum, WeylElt};

/// `(t^α − c)^m` for a positive root `α`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RootFactor {
    pub root: Root,
    pub target: QScalar,
    pub mult: u32,
}

impl RootFactor {
    pub fn new(root: Root, target: QScalar, mult: u32) -> Self {
        assert!(!target.is_zero(), "factor target must be nonzero");
        RootFactor { root, target, mult }
    }

    pub fn frame(&self) -> BinomialFrame {
        BinomialFrame::for_character(&self.root.character, self.target.clone())
            .expect("roots are nonzero characters")
    }

    /// `t^α − c`, without the multiplicity.
    pub fn binomial(&self) -> LaurentPoly {
        LaurentPoly::binomial(&self.root.character, &self.target)
    }

    fn same_key(&self, other: &RootFactor) -> bool {
        self.root == other.root && self.target == other.target
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: Vec<RootFactor>,
}

type FactorKey = (Root, QScalar);

impl RatFunc {
    pub fn zero(rank: usize) -> Self {
        Self::from_poly(LaurentPoly::zero(rank))
    }

    pub fn one(rank: usize) -> Self {
        Self::from_poly(LaurentPoly::one(rank))
    }

    pub fn constant(rank: usize, c: QScalar) -> Self {
        Self::from_poly(LaurentPoly::constant(rank, c))
    }

    pub fn character(lambda: &[i64]) -> Self {
        Self::from_poly(LaurentPoly::character(lambda))
    }

    pub fn from_poly(num: LaurentPoly) -> Self {
        RatFunc { num, den: Vec::new() }
    }

    /// Builds `num / ∏ factors`, normalizing negative roots, merging equal
    /// factors and cancelling.
    pub fn new(num: LaurentPoly, factors: Vec<RootFactor>) -> Self {
        let mut num = num;
        let mut merged: BTreeMap<FactorKey, u32> = BTreeMap::new();
        for f in factors {
            if f.mult == 0 {
                continue;
            }
            if f.root.is_negative() {
                // t^{-γ} − c = −c·t^{-γ}·(t^γ − c^{-1})
                let gamma = f.root.neg();
                let m = f.mult as i64;
                let unit = (-f.target.clone()).pow(-m);
                num = num
                    .scale(&unit)
                    .shift(&ExpVec::from_character(&gamma.character).scaled(m));
                let inv = f.target.inv().expect("nonzero target");
                *merged.entry((gamma, inv)).or_default() += f.mult;
            } else {
                *merged.entry((f.root, f.target)).or_default() += f.mult;
            }
        }
        let den = merged
            .into_iter()
            .map(|((root, target), mult)| RootFactor { root, target, mult })
            .collect();
        let mut out = RatFunc { num, den };
        out.reduce_in_place();
        out
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &[RootFactor] {
        &self.den
    }

    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn as_polynomial(&self) -> Option<&LaurentPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    /// The denominator expanded as a Laurent polynomial.
    pub fn den_poly(&self) -> LaurentPoly {
        self.den.iter().fold(LaurentPoly::one(self.rank()), |acc, f| {
            &acc * &f.binomial().pow(f.mult)
        })
    }

    fn reduce_in_place(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        for f in self.den.iter_mut() {
            let frame = f.frame();
            while f.mult > 0 {
                let (q, r) = frame.div_rem(&self.num);
                if !r.is_zero() {
                    break;
                }
                self.num = q;
                f.mult -= 1;
            }
        }
        self.den.retain(|f| f.mult > 0);
    }

    /// Multiplicity of `(t^α − c)` in the reduced denominator.
    pub fn pole_order(&self, root: &Root, target: &QScalar) -> u32 {
        self.den
            .iter()
            .find(|f| &f.root == root && &f.target == target)
            .map_or(0, |f| f.mult)
    }

    /// The restriction of `(t^α − c)·self` to the divisor `{t^α = c}`, or
    /// `None` for poles of order above one.
    pub fn residue(&self, root: &Root, target: &QScalar) -> Option<DivisorClass> {
        let frame = BinomialFrame::for_character(&root.character, target.clone())
            .expect("roots are nonzero characters");
        match self.pole_order(root, target) {
            0 => Some(DivisorClass {
                num: LaurentPoly::zero(self.rank()),
                den: frame.reduce(&LaurentPoly::one(self.rank())),
                frame,
            }),
            1 => {
                let rest = self
                    .den
                    .iter()
                    .filter(|f| !(&f.root == root && &f.target == target))
                    .fold(LaurentPoly::one(self.rank()), |acc, f| {
                        frame.reduce(&(&acc * &f.binomial().pow(f.mult)))
                    });
                Some(DivisorClass {
                    num: frame.reduce(&self.num),
                    den: rest,
                    frame,
                })
            }
            _ => None,
        }
    }

    /// `self` vanishes identically on `{t^α = c}`.
    pub fn vanishes_on(&self, root: &Root, target: &QScalar) -> bool {
        self.pole_order(root, target) == 0
            && BinomialFrame::for_character(&root.character, target.clone())
                .expect("nonzero root")
                .divides(&self.num)
    }

    pub fn scale(&self, c: &QScalar) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.rank());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn mul_poly(&self, p: &LaurentPoly) -> RatFunc {
        let mut out = RatFunc {
            num: &self.num * p,
            den: self.den.clone(),
        };
        out.reduce_in_place();
        out
    }

    /// Sum of many terms over their least common denominator, reduced once.
    pub fn sum<'a>(rank: usize, items: impl IntoIterator<Item = &'a RatFunc>) -> RatFunc {
        let items: Vec<&RatFunc> = items.into_iter().filter(|f| !f.is_zero()).collect();
        match items.len() {
            0 => return RatFunc::zero(rank),
            1 => return items[0].clone(),
            _ => {}
        }
        let mut lcm: BTreeMap<FactorKey, u32> = BTreeMap::new();
        for f in &items {
            for fac in &f.den {
                let e = lcm
                    .entry((fac.root.clone(), fac.target.clone()))
                    .or_default();
                *e = (*e).max(fac.mult);
            }
        }
        let mut powers: BTreeMap<(FactorKey, u32), LaurentPoly> = BTreeMap::new();
        let mut num = LaurentPoly::zero(rank);
        for f in &items {
            let mut term = f.num.clone();
            for (key, &m) in &lcm {
                let have = f
                    .den
                    .iter()
                    .find(|x| x.root == key.0 && x.target == key.1)
                    .map_or(0, |x| x.mult);
                if have < m {
                    let p = powers.entry((key.clone(), m - have)).or_insert_with(|| {
                        LaurentPoly::binomial(&key.0.character, &key.1).pow(m - have)
                    });
                    term = &term * p;
                }
            }
            num = &num + &term;
        }
        let den = lcm
            .into_iter()
            .map(|((root, target), mult)| RootFactor { root, target, mult })
            .collect();
        let mut out = RatFunc { num, den };
        out.reduce_in_place();
        out
    }

    /// Inverse of an element whose numerator is a single monomial.
    pub fn try_inv(&self) -> Result<RatFunc, LaurentError> {
        if self.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        let (e, c) = self
            .num
            .as_monomial()
            .ok_or_else(|| LaurentError::NotInvertible(self.to_string()))?;
        let unit = LaurentPoly::term(c.inv()?, e.scaled(-1));
        let num = self.den_poly();
        Ok(RatFunc {
            num: &num * &unit,
            den: Vec::new(),
        })
    }

    /// `c · t^μ · ∏ top / ∏ bottom` for binomial factor lists; the general
    /// shape of products such as `Δ` whose inverses are needed.
    pub fn from_factored(
        unit: QScalar,
        shift: ExpVec,
        top: &[RootFactor],
        bottom: &[RootFactor],
    ) -> RatFunc {
        let mut num = LaurentPoly::term(unit, shift);
        for f in top {
            num = &num * &f.binomial().pow(f.mult);
        }
        RatFunc::new(num, bottom.to_vec())
    }

    /// `^w f`, the pullback `f(w^{-1}·t)`, acting on characters by `t^λ ↦ t^{wλ}`.
    pub fn transform(&self, datum: &RootDatum, w: &WeylElt) -> RatFunc {
        if w.is_identity() || self.is_zero() {
            return self.clone();
        }
        let mut num = self.num.map_exponents(|e| ExpVec(w.act(&e.0)));
        let mut merged: BTreeMap<FactorKey, u32> = BTreeMap::new();
        for f in &self.den {
            let image = datum.act_on_root(w, &f.root);
            if image.is_positive() {
                *merged.entry((image, f.target.clone())).or_default() += f.mult;
            } else {
                let gamma = image.neg();
                let m = f.mult as i64;
                let unit = (-f.target.clone()).pow(-m);
                num = num
                    .scale(&unit)
                    .shift(&ExpVec::from_character(&gamma.character).scaled(m));
                let inv = f.target.inv().expect("nonzero target");
                *merged.entry((gamma, inv)).or_default() += f.mult;
            }
        }
        let den = merged
            .into_iter()
            .map(|((root, target), mult)| RootFactor { root, target, mult })
            .collect();
        RatFunc { num, den }
    }

    fn try_binary(&self, other: &RatFunc) -> Result<(), LaurentError> {
        if self.rank() != other.rank() {
            return Err(LaurentError::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &RatFunc) -> Result<RatFunc, LaurentError> {
        self.try_binary(other)?;
        if self.den == other.den {
            let mut out = RatFunc {
                num: &self.num + &other.num,
                den: self.den.clone(),
            };
            out.reduce_in_place();
            return Ok(out);
        }
        Ok(RatFunc::sum(self.rank(), [self, other]))
    }

    pub fn try_mul(&self, other: &RatFunc) -> Result<RatFunc, LaurentError> {
        self.try_binary(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(RatFunc::zero(self.rank()));
        }
        let mut den = self.den.clone();
        for f in &other.den {
            match den.iter_mut().find(|x| x.same_key(f)) {
                Some(x) => x.mult += f.mult,
                None => den.push(f.clone()),
            }
        }
        den.sort();
        let mut out = RatFunc {
            num: &self.num * &other.num,
            den,
        };
        out.reduce_in_place();
        Ok(out)
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        self.try_add(rhs).expect("rank mismatch")
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        self.try_mul(rhs).expect("rank mismatch")
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        for (k, fac) in self.den.iter().enumerate() {
            if k > 0 {
                write!(f, "·")?;
            }
            write!(f, "(t^{:?} - ({}))", fac.root.coords(), fac.target)?;
            if fac.mult > 1 {
                write!(f, "^{}", fac.mult)?;
            }
        }
        write!(f, ")")
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A rational function restricted to a divisor `{t^α = c}`, as a pair of
/// canonical remainders.
#[derive(Clone, Debug)]
pub struct DivisorClass {
    frame: BinomialFrame,
    num: LaurentPoly,
    den: LaurentPoly,
}

impl DivisorClass {
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Numerator remainder; equals the class itself when the denominator
    /// restricts to one.
    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn neg(&self) -> DivisorClass {
        DivisorClass {
            frame: self.frame.clone(),
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &DivisorClass) -> DivisorClass {
        assert_eq!(self.frame, other.frame, "classes on different divisors");
        let num = self
            .frame
            .reduce(&(&(&self.num * &other.den) + &(&other.num * &self.den)));
        let den = self.frame.reduce(&(&self.den * &other.den));
        DivisorClass {
            frame: self.frame.clone(),
            num,
            den,
        }
    }

    /// Equality in the coordinate ring of the divisor.
    pub fn equals(&self, other: &DivisorClass) -> bool {
        self.frame == other.frame
            && self
                .frame
                .reduce(&(&(&self.num * &other.den) - &(&other.num * &self.den)))
                .is_zero()
    }
}
