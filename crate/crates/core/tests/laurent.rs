use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use residue_hecke::laurent::{BinomialFrame, ExpVec, LaurentPoly, QScalar, RatFunc, RootFactor};
use residue_hecke::rootdata::{Root, RootDatum, WeylElt};
use residue_hecke::sampling::Sampler;

const PRESETS: [&str; 5] = ["A1", "A2", "B2", "G2", "A1aff"];
const Q: f64 = 1.37;

fn preset(k: usize) -> std::sync::Arc<RootDatum> {
    RootDatum::preset(PRESETS[k % PRESETS.len()]).unwrap()
}

/// A function with a pole of order at most one along `{t^α = 1}`.
fn simple_pole_at(s: &mut Sampler, alpha: &Root) -> RatFunc {
    let mut f = s.ratfunc();
    if f.pole_order(alpha, &QScalar::one()) == 0 {
        f = &f * &RatFunc::new(LaurentPoly::one(f.rank()), vec![RootFactor::new(alpha.clone(), QScalar::one(), 1)]);
    }
    while f.pole_order(alpha, &QScalar::one()) > 1 {
        f = f.mul_poly(&LaurentPoly::binomial(alpha.character(), &QScalar::one()));
    }
    f
}

/// Evaluates `p` at the point whose half-coordinates are `y`, with `q = Q`.
fn eval(p: &LaurentPoly, y: &[Complex64]) -> Complex64 {
    p.terms()
        .map(|(e, c)| {
            e.0.iter()
                .zip(y)
                .fold(Complex64::new(c.eval_f64(Q), 0.0), |acc, (&k, yi)| acc * yi.powi(k as i32))
        })
        .sum()
}

/// A random point on `{t^{v/2} = c}` for doubled exponent `v`.
fn point_on(v: &[i64], c: f64, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let k = v.iter().position(|&x| x != 0).unwrap();
    let mut y: Vec<Complex64> = (0..v.len())
        .map(|_| Complex64::from_polar(rng.gen_range(0.7..1.4), rng.gen_range(0.0..6.28)))
        .collect();
    let rest: Complex64 = v
        .iter()
        .zip(&y)
        .enumerate()
        .filter(|(j, _)| *j != k)
        .map(|(_, (&e, yj))| yj.powi(e as i32))
        .product();
    let branch = rng.gen_range(0..v[k].unsigned_abs()) as f64;
    let target = Complex64::new(c, 0.0) / rest;
    let (r, theta) = target.to_polar();
    let n = v[k] as f64;
    y[k] = Complex64::from_polar(r.powf(1.0 / n), (theta + 2.0 * std::f64::consts::PI * branch) / n);
    y
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn residue_is_antisymmetric(seed in any::<u64>(), k in 0usize..5) {
        let d = preset(k);
        let mut s = Sampler::new(&d, seed);
        let alpha = s.positive_root();
        let a = simple_pole_at(&mut s, &alpha);
        let sa = a.transform(&d, &d.reflection(&alpha).unwrap());
        let one = QScalar::one();
        let r = a.residue(&alpha, &one).unwrap();
        let rs = sa.residue(&alpha, &one).unwrap();
        prop_assert!(rs.equals(&r.neg()), "{a} and {sa}");
    }

    #[test]
    fn residues_cancel_iff_the_sum_is_regular(seed in any::<u64>(), k in 0usize..5, mode in 0u8..3) {
        let d = preset(k);
        let mut s = Sampler::new(&d, seed);
        let alpha = s.positive_root();
        let one = QScalar::one();
        let a = simple_pole_at(&mut s, &alpha);
        let b = match mode {
            0 => simple_pole_at(&mut s, &alpha),
            1 => a.transform(&d, &d.reflection(&alpha).unwrap()),
            _ => &(-&a) + &RatFunc::from_poly(s.poly(2)),
        };
        let cancel = a.residue(&alpha, &one).unwrap().add(&b.residue(&alpha, &one).unwrap()).is_zero();
        prop_assert_eq!(cancel, (&a + &b).pole_order(&alpha, &one) == 0);
        if mode > 0 {
            prop_assert!(cancel);
        }
    }

    #[test]
    fn division_by_binomials_roundtrips(seed in any::<u64>(), k in 0usize..5, twisted in any::<bool>()) {
        let d = preset(k);
        let mut s = Sampler::new(&d, seed);
        let alpha = s.positive_root();
        let c = if twisted { QScalar::q_pow(-2) } else { QScalar::one() };
        let frame = BinomialFrame::for_character(alpha.character(), c.clone()).unwrap();
        let f = LaurentPoly::binomial(alpha.character(), &c);
        let p = &s.poly(3) * &f;
        let quotient = frame.divide(&p).unwrap();
        prop_assert_eq!(&quotient * &f, p.clone());
        let noise = s.nonzero_poly(2);
        let (q2, r2) = frame.div_rem(&(&p + &noise));
        prop_assert_eq!(&(&q2 * &f) + &r2, &p + &noise);
        if let Ok(q3) = frame.divide(&(&p + &noise)) {
            prop_assert_eq!(&q3 * &f, &p + &noise);
        }
    }

    #[test]
    fn vanishing_matches_numeric_substitution(seed in any::<u64>(), k in 0usize..5, divisible in any::<bool>()) {
        let d = preset(k);
        let mut s = Sampler::new(&d, seed);
        let alpha = s.positive_root();
        let c = QScalar::q_pow(-2);
        let mut num = s.nonzero_poly(3);
        if divisible {
            num = &num * &LaurentPoly::binomial(alpha.character(), &c);
        }
        let f = RatFunc::from_poly(num.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let v = ExpVec::from_character(alpha.character());
        let values: Vec<f64> = (0..4)
            .map(|_| eval(&num, &point_on(&v.0, Q.powi(-2), &mut rng)).norm())
            .collect();
        let scale = num.terms().map(|(_, c)| c.eval_f64(Q).abs()).sum::<f64>() * 10.0;
        let numerically_zero = values.iter().all(|v| *v < 1e-9 * scale);
        prop_assert_eq!(f.vanishes_on(&alpha, &c), numerically_zero, "{} at {:?}", num, values);
        prop_assert_eq!(f.vanishes_on(&alpha, &c), divisible || numerically_zero);
    }
}

#[test]
fn transform_is_a_group_action_and_homomorphism() {
    for (k, seed) in (0..200u64).map(|n| ((n % 5) as usize, n)) {
        let d = preset(k);
        let mut s = Sampler::new(&d, 1000 + seed);
        let (x, y) = (s.weyl_element(3), s.weyl_element(3));
        let (a, b) = (s.ratfunc(), s.ratfunc());
        let t = |f: &RatFunc, w: &WeylElt| f.transform(&d, w);
        let (xy, e) = (d.mul(&x, &y), d.identity());
        assert_eq!(t(&a, &xy), t(&t(&a, &y), &x), "action, seed {seed}");
        assert_eq!(t(&a, &e), a);
        assert_eq!(t(&(&a + &b), &x), &t(&a, &x) + &t(&b, &x), "sum, seed {seed}");
        assert_eq!(t(&(&a * &b), &x), &t(&a, &x) * &t(&b, &x), "product, seed {seed}");
    }
}

#[test]
fn module_examples() {
    let d = RootDatum::preset("A1").unwrap();
    let alpha = d.simple_root(0);
    let one = QScalar::one();
    let q = QScalar::q();
    let lam = alpha.character().to_vec();
    let t = |k: i64| LaurentPoly::character(&lam.iter().map(|x| x * k).collect::<Vec<_>>());
    let pole = |num: LaurentPoly| RatFunc::new(num, vec![RootFactor::new(alpha.clone(), one.clone(), 1)]);

    assert!((&t(1) - &t(1)).is_zero());
    assert_eq!(&t(1) * &t(2), t(3));
    let lhs = &(&t(1).scale(&q) - &LaurentPoly::one(1)) * &t(-1);
    assert_eq!(lhs, &LaurentPoly::constant(1, q.clone()) - &t(-1));

    let frame = BinomialFrame::for_character(&lam, one.clone()).unwrap();
    assert_eq!(frame.divide(&(&t(2) - &LaurentPoly::one(1))).unwrap(), &t(1) + &LaurentPoly::one(1));
    let qm1 = BinomialFrame::for_character(&lam, QScalar::q_pow(-1)).unwrap();
    let p = &t(1).scale(&QScalar::q_pow(2)) - &LaurentPoly::constant(1, q.clone());
    assert_eq!(qm1.divide(&p).unwrap(), LaurentPoly::constant(1, QScalar::q_pow(2)));
    match frame.divide(&(&t(1) - &LaurentPoly::constant(1, q.clone()))) {
        Err(residue_hecke::laurent::LaurentError::NotDivisible { remainder }) => {
            assert_eq!(remainder, LaurentPoly::constant(1, &one - &q));
        }
        other => panic!("{other:?}"),
    }

    let inv = pole(LaurentPoly::one(1));
    assert!((&inv + &(-&inv)).is_zero());
    let theta_num = &t(1).scale(&q) - &LaurentPoly::constant(1, QScalar::q_pow(-1));
    let q_minus = &q - &QScalar::q_pow(-1);
    let sum = &pole(theta_num.clone()) + &pole(LaurentPoly::constant(1, -q_minus.clone()));
    assert_eq!(sum, RatFunc::constant(1, q.clone()));
    assert_eq!(&inv * &RatFunc::from_poly(LaurentPoly::binomial(&lam, &one)), RatFunc::one(1));
    assert_eq!(pole(&t(2) - &LaurentPoly::one(1)), RatFunc::from_poly(&t(1) + &LaurentPoly::one(1)));
    let b = LaurentPoly::binomial(&lam, &one);
    assert_eq!(pole(&b * &b), RatFunc::from_poly(b.clone()));

    let s = d.generator(1).unwrap();
    assert_eq!(inv.transform(&d, &s), pole(-&t(1)));

    let r = inv.residue(&alpha, &one).unwrap();
    assert!(r.equals(&RatFunc::one(1).residue(&alpha, &one).unwrap().add(&r)));
    assert_eq!(inv.pole_order(&alpha, &one), 1);
    let theta = pole(theta_num);
    let rt = theta.residue(&alpha, &one).unwrap();
    let expect = pole(LaurentPoly::constant(1, q_minus)).residue(&alpha, &one).unwrap();
    assert!(rt.equals(&expect));
    assert!(RatFunc::character(&lam).residue(&alpha, &one).unwrap().is_zero());

    let a2 = RootDatum::preset("A2").unwrap();
    let s1 = a2.generator(1).unwrap();
    let a12: Vec<i64> = a2.simple_roots()[0].iter().zip(&a2.simple_roots()[1]).map(|(x, y)| x + y).collect();
    assert_eq!(
        RatFunc::character(&a2.simple_roots()[1]).transform(&a2, &s1),
        RatFunc::character(&a12)
    );
}
