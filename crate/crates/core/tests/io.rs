use proptest::prelude::*;
use residue_hecke::demazure::NormalForm;
use residue_hecke::io::*;
use residue_hecke::presentations::{no_progress, verify_quadratic};
use residue_hecke::rootdata::RootDatum;
use residue_hecke::sampling::Sampler;
use serde_json::Value;

const PRESETS: [&str; 6] = ["A1", "A2", "B2", "G2", "A1aff", "A2aff"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn elements_roundtrip(seed in any::<u64>(), k in 0usize..6, htilde in any::<bool>()) {
        let d = RootDatum::preset(PRESETS[k]).unwrap();
        let mut s = Sampler::new(&d, seed);
        let p = if htilde { s.htilde_only_element() } else { s.hq_element() };
        let text = to_text(&element_to_json(&p));
        let back = element_from_json(&d, &text).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert_eq!(to_text(&element_to_json(&back)), text);
    }

    #[test]
    fn normal_forms_roundtrip(seed in any::<u64>(), k in 0usize..4) {
        let d = RootDatum::preset(PRESETS[k]).unwrap();
        let mut s = Sampler::new(&d, seed);
        let nf = NormalForm::new(&d, s.coefficient_map(3));
        let text = to_text(&normal_form_to_json(&nf));
        prop_assert_eq!(normal_form_from_json(&d, &text).unwrap(), nf);
    }
}

#[test]
fn reports_carry_the_schema() {
    let d = RootDatum::preset("B2").unwrap();
    let report = verify_quadratic(&d, &no_progress).unwrap();
    let v = relation_report_json("quadratic", &d, &report);
    assert_eq!(v["schema"], SCHEMA);
    assert_eq!(v["datum"], "B2");
    assert_eq!(v["entries"][0]["relation"], "5.2.1");
    let text = to_text(&v);
    let parsed: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(to_text(&parsed), text);
}

#[test]
fn custom_realizations_survive_a_roundtrip() {
    let gl3 = r#"{"cartan":[[2,-1],[-1,2]],"roots":[[1,-1,0],[0,1,-1]],"coroots":[[1,-1,0],[0,1,-1]]}"#;
    assert!(matches!(datum_from_json(gl3), Err(IoError::Datum(_))));
    let adjoint = r#"{"cartan":[[2,-1],[-1,2]],"roots":[[1,0],[0,1]],"coroots":[[2,-1],[-1,2]]}"#;
    let d = datum_from_json(adjoint).unwrap();
    assert_eq!(d.rank_x(), 2);
    assert_ne!(d.simple_roots(), RootDatum::preset("A2").unwrap().simple_roots());
    let again = datum_from_json(&to_text(&datum_to_json(&d))).unwrap();
    assert_eq!(again.simple_roots(), d.simple_roots());
    assert!(matches!(datum_from_json("{\"cartan\": [[2,-1],[-1]]}"), Err(IoError::Datum(_))));
    assert!(matches!(datum_from_json("{\"cartan\": "), Err(IoError::Json { .. })));
}
