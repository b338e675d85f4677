use std::sync::Arc;

use residue_hecke::algebra::AlgebraElement;
use residue_hecke::demazure::{
    make_delta, normal_form, sigma, sigma_w, sigma_word, theta, theta_inverse, NormalForm,
};
use residue_hecke::laurent::{ExpVec, LaurentPoly, QScalar, RatFunc, RootFactor};
use residue_hecke::membership::{check_membership, delta_criterion, Condition, Level};
use residue_hecke::rootdata::RootDatum;
use residue_hecke::sampling::Sampler;

const PRESETS: [&str; 5] = ["A1", "A2", "B2", "G2", "A1aff"];

fn preset(name: &str) -> Arc<RootDatum> {
    RootDatum::preset(name).unwrap()
}

/// One to three terms `f [w]` with `ℓ(w) ≤ 3` and simple poles.
fn small_element(s: &mut Sampler) -> AlgebraElement {
    let d = s.datum().clone();
    let k = 1 + (s.scalar().eval_f64(1.5).abs() as usize) % 3;
    let terms: Vec<_> = (0..k).map(|_| (s.weyl_element(3), s.ratfunc())).collect();
    AlgebraElement::from_terms(&d, terms)
}

#[test]
fn multiplication_is_associative_and_distributive() {
    for n in 0..100u64 {
        let d = preset(PRESETS[(n % 5) as usize]);
        let mut s = Sampler::new(&d, 500 + n);
        let (a, b, c) = (small_element(&mut s), small_element(&mut s), small_element(&mut s));
        assert_eq!(&(&a * &b) * &c, &a * &(&b * &c), "associativity, sample {n}");
        assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c), "left distributivity, sample {n}");
        assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c), "right distributivity, sample {n}");
    }
}

#[test]
fn the_action_is_a_representation() {
    for n in 0..100u64 {
        let d = preset(PRESETS[(n % 5) as usize]);
        let mut s = Sampler::new(&d, 900 + n);
        let (p, q) = (small_element(&mut s), small_element(&mut s));
        let f = s.ratfunc();
        assert_eq!((&p * &q).apply(&f), p.apply(&q.apply(&f)), "sample {n}");
    }
}

#[test]
fn every_sigma_w_is_in_hq() {
    for (name, len) in [("A1", 1), ("A2", 3), ("B2", 4), ("G2", 4), ("A1aff", 4), ("A2aff", 3)] {
        let d = preset(name);
        for w in d.elements_up_to_length(len) {
            let r = check_membership(&sigma_w(&d, &w), Level::Hq);
            assert!(r.element_ok(), "{name} {w}: {:?}", r.violations);
        }
    }
}

#[test]
fn top_coefficients_of_products_are_multiples_of_theta() {
    for n in 0..40u64 {
        let d = preset(["A2", "B2", "G2", "A1aff"][(n % 4) as usize]);
        let mut s = Sampler::new(&d, 70 + n);
        let p = &s.hq_element() * &s.hq_element();
        let top = p.support().map(|w| w.length()).max().unwrap();
        for (w, f) in p.terms().iter().filter(|(w, _)| w.length() == top) {
            let ratio = f * &theta_inverse(&d, w);
            assert!(ratio.is_polynomial(), "{w}: {ratio}");
        }
    }
}

#[test]
fn sigma_basis_is_independent() {
    for n in 0..60u64 {
        let d = preset(["A2", "B2", "G2"][(n % 3) as usize]);
        let mut s = Sampler::new(&d, 40 + n);
        let nf = NormalForm::new(&d, s.coefficient_map(4));
        assert!(!nf.coeffs().is_empty());
        assert!(!nf.reconstruct().is_zero(), "sample {n}");
        let p = s.hq_element();
        assert_eq!(normal_form(&p).unwrap().reconstruct(), p);
    }
}

#[test]
fn algebra_examples() {
    let d = preset("A1");
    let alpha = d.simple_root(0);
    let lam = alpha.character().to_vec();
    let s1 = sigma(&d, 1).unwrap();
    let q = QScalar::q();
    let q_minus = &q - &QScalar::q_pow(-1);

    assert_eq!(&AlgebraElement::one(&d) * &s1, s1);
    let expected = &s1.scale(&q_minus) + &AlgebraElement::one(&d);
    assert_eq!(&s1 * &s1, expected);

    let a2 = preset("A2");
    let omega = a2.fundamental_weights().unwrap();
    let g = a2.generator(1).unwrap();
    let twisted = &AlgebraElement::group_element(&a2, g.clone()) * &AlgebraElement::character(&a2, &omega[0]);
    let moved = a2.act_on_character(&g, &omega[0]);
    assert_eq!(twisted, AlgebraElement::term(&a2, g, RatFunc::character(&moved)));

    let f = RatFunc::character(&lam);
    assert_eq!(AlgebraElement::character(&d, &lam).apply(&f), RatFunc::character(&[2 * lam[0]]));
    assert_eq!(s1.apply(&RatFunc::one(1)), RatFunc::constant(1, q.clone()));
    let half = RatFunc::from_poly(LaurentPoly::term(QScalar::one(), ExpVec(lam.clone())));
    let image = RatFunc::from_poly(LaurentPoly::term(QScalar::q_pow(-1), ExpVec(vec![-lam[0]])));
    assert_eq!(s1.apply(&half), image);

    let t = AlgebraElement::character(&d, &lam);
    assert_eq!(t.conjugate_by_delta().unwrap(), t);
    let conj = s1.conjugate_by_delta().unwrap();
    assert!(check_membership(&conj, Level::Htilde).element_ok());
}

#[test]
fn membership_examples() {
    let d = preset("A1");
    let alpha = d.simple_root(0);
    let pole = RatFunc::new(LaurentPoly::one(1), vec![RootFactor::new(alpha, QScalar::one(), 1)]);
    let e = d.identity();
    let s = d.generator(1).unwrap();
    let s1 = sigma(&d, 1).unwrap();

    assert!(check_membership(&s1, Level::Hq).element_ok());
    assert!(delta_criterion(&s1).unwrap());
    let t = AlgebraElement::character(&d, &[3]);
    assert!(delta_criterion(&t).unwrap());

    let lone = AlgebraElement::term(&d, e.clone(), pole.clone());
    let r = check_membership(&lone, Level::Htilde);
    assert!(r.cites(Condition::Residues) && !r.cites(Condition::Poles));

    let pair = AlgebraElement::from_terms(&d, [(e, pole.clone()), (s, -&pole)]);
    assert!(check_membership(&pair, Level::Htilde).element_ok());
    let r = check_membership(&pair, Level::Hq);
    assert_eq!(r.violations.len(), 1);
    assert!(r.cites(Condition::Vanishing));
    assert!(!delta_criterion(&pair).unwrap());
}

#[test]
fn demazure_examples() {
    let d = preset("A1");
    let alpha = d.simple_root(0);
    let lam = alpha.character().to_vec();
    let q = QScalar::q();
    assert_eq!(sigma_w(&d, &d.identity()), AlgebraElement::one(&d));
    assert_eq!(sigma_w(&d, &d.generator(1).unwrap()), sigma(&d, 1).unwrap());
    assert_eq!(theta(&d, &d.identity()), RatFunc::one(1));
    let theta_s = RatFunc::new(
        &LaurentPoly::character(&lam).scale(&q) - &LaurentPoly::constant(1, QScalar::q_pow(-1)),
        vec![RootFactor::new(alpha.clone(), QScalar::one(), 1)],
    );
    assert_eq!(theta(&d, &d.generator(1).unwrap()), theta_s);

    // Δ = q^{-1} t^{-α/2} − q t^{α/2}
    let delta = LaurentPoly::term(QScalar::q_pow(-1), ExpVec(vec![-lam[0]]))
        - LaurentPoly::term(q.clone(), ExpVec(lam.clone()));
    assert_eq!(make_delta(&d).unwrap(), RatFunc::from_poly(delta));
    assert!(make_delta(&d).unwrap().vanishes_on(&alpha, &QScalar::q_pow(-2)));

    let a2 = preset("A2");
    assert_eq!(sigma_word(&a2, &[1, 2, 1]).unwrap(), sigma_word(&a2, &[2, 1, 2]).unwrap());
    let s12 = a2.from_word(&[1, 2]).unwrap();
    let expected = a2.inversion_set(&s12).into_iter().fold(RatFunc::one(2), |acc, b| {
        let num = &LaurentPoly::character(b.character()).scale(&q) - &LaurentPoly::constant(2, QScalar::q_pow(-1));
        &acc * &RatFunc::new(num, vec![RootFactor::new(b, QScalar::one(), 1)])
    });
    assert_eq!(theta(&a2, &s12), expected);
    let delta = make_delta(&a2).unwrap();
    for i in [1, 2] {
        let image = sigma(&a2, i).unwrap().apply(&delta);
        assert_eq!(image, delta.scale(&-QScalar::q_pow(-1)));
    }

    let nf = normal_form(&sigma(&a2, 2).unwrap()).unwrap();
    assert_eq!(nf, NormalForm::new(&a2, [(a2.generator(2).unwrap(), LaurentPoly::one(2))]));
    let nf = normal_form(&(&sigma(&d, 1).unwrap() * &sigma(&d, 1).unwrap())).unwrap();
    let q_minus = &q - &QScalar::q_pow(-1);
    let expected = NormalForm::new(
        &d,
        [(d.identity(), LaurentPoly::one(1)), (d.generator(1).unwrap(), LaurentPoly::constant(1, q_minus))],
    );
    assert_eq!(nf, expected);
    let omega = a2.fundamental_weights().unwrap();
    let p = &AlgebraElement::character(&a2, &omega[1]) * &sigma_w(&a2, &s12);
    assert_eq!(normal_form(&p).unwrap(), NormalForm::new(&a2, [(s12, LaurentPoly::character(&omega[1]))]));
}
