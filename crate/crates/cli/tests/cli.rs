use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use residue_hecke::demazure::{sigma, sigma_word};
use residue_hecke::laurent::LaurentPoly;
use residue_hecke::io::{element_from_json, element_to_json, normal_form_from_json, to_text};
use residue_hecke::rootdata::RootDatum;
use serde_json::Value;
use tempfile::TempDir;

fn hecke(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(args)
        .current_dir(dir)
        .env_remove("HECKE_SEED")
        .output()
        .expect("spawn hecke")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

const BAD_A1: &str = r#"{"terms":[
  {"word":[],"num":[{"coef":"1","exp":[0]}],"den":[{"root":[1],"target":"1","mult":1}]},
  {"word":[1],"num":[{"coef":"-1","exp":[0]}],"den":[{"root":[1],"target":"1","mult":1}]}
]}"#;

#[test]
fn quadratic_suite_passes() {
    let dir = TempDir::new().unwrap();
    let out = hecke(&["verify", "-d", "A2", "--suite", "quadratic"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["pass"], true);
    assert_eq!(v["entries"].as_array().unwrap().len(), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("[pass] 5.2.1 i=1"));
}

#[test]
fn htilde_element_fails_hq_at_1_3_3() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("bad.json"), BAD_A1).unwrap();
    let out = hecke(&["check", "-d", "A1", "bad.json", "--level", "htilde"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let out = hecke(&["check", "-d", "A1", "bad.json", "--level", "hq"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["element_ok"], false);
    let cited: Vec<&str> = v["violations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["condition"].as_str().unwrap())
        .collect();
    assert_eq!(cited, ["1.3.3"]);
}

#[test]
fn normal_form_of_sigma12() {
    let dir = TempDir::new().unwrap();
    let d = RootDatum::preset("A2").unwrap();
    let p = sigma_word(&d, &[1, 2]).unwrap();
    fs::write(dir.path().join("sigma12.json"), to_text(&element_to_json(&p))).unwrap();
    let out = hecke(&["nf", "-d", "A2", "sigma12.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let nf = normal_form_from_json(&d, std::str::from_utf8(&out.stdout).unwrap()).unwrap();
    let w = d.from_word(&[1, 2]).unwrap();
    assert_eq!(nf.coeffs().len(), 1);
    assert_eq!(nf.coeffs()[&w], LaurentPoly::one(d.rank_x()));
}

#[test]
fn nf_outside_span_exits_1() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("bad.json"), BAD_A1).unwrap();
    let out = hecke(&["nf", "-d", "A1", "bad.json"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["in_span"], false);
}

#[test]
fn written_elements_reparse() {
    let dir = TempDir::new().unwrap();
    let d = RootDatum::preset("B2").unwrap();
    let out = hecke(&["sigma", "-d", "B2", "--word", "1,2,1", "-o", "w.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("w.json")).unwrap();
    assert_eq!(element_from_json(&d, &text).unwrap(), sigma_word(&d, &[1, 2, 1]).unwrap());

    fs::write(dir.path().join("s2.json"), to_text(&element_to_json(&sigma(&d, 2).unwrap()))).unwrap();
    let out = hecke(&["mul", "-d", "B2", "w.json", "s2.json", "-o", "p.json"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let text = fs::read_to_string(dir.path().join("p.json")).unwrap();
    assert_eq!(element_from_json(&d, &text).unwrap(), sigma_word(&d, &[1, 2, 1, 2]).unwrap());
}

#[test]
fn reports_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let args = ["verify", "-d", "A2", "--suite", "membership-closure", "--samples", "4", "--seed", "9"];
    let a = hecke(&args, dir.path());
    let b = hecke(&args, dir.path());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json(&a)["seed"], 9);

    let env = Command::new(env!("CARGO_BIN_EXE_hecke"))
        .args(args)
        .env("HECKE_SEED", "3")
        .output()
        .unwrap();
    assert_eq!(json(&env)["seed"], 3);
}

#[test]
fn elliptic_suites() {
    let dir = TempDir::new().unwrap();
    let out = hecke(&["elliptic", "--suite", "braid-failure", "--samples", "10"], dir.path());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(json(&out)["pass"], true);
    let out = hecke(&["elliptic", "--suite", "involution", "--samples", "10", "--tau", "0.3+0.8i"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let out = hecke(&["elliptic", "--suite", "involution", "--tau", "sideways"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parse_and_usage_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("broken.json"), "{\"terms\": [\n  {\"word\": [1],\n").unwrap();
    let out = hecke(&["nf", "-d", "A1", "broken.json"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("broken.json") && err.contains("line 3"), "{err}");

    let out = hecke(&["verify", "-d", "A2", "--suite", "daha"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = hecke(&["verify", "-d", "E9", "--suite", "quadratic"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let out = hecke(&["frobnicate"], dir.path());
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn datum_files_and_listing() {
    let dir = TempDir::new().unwrap();
    fs::write(dir.path().join("g2.json"), r#"{"cartan":[[2,-1],[-3,2]]}"#).unwrap();
    let out = hecke(&["datum", "-d", "g2.json", "--max-length", "6"], dir.path());
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["positive_real_roots"].as_array().unwrap().len(), 6);
    assert_eq!(v["weyl"].as_array().unwrap().len(), 12);

    let out = hecke(&["datum", "-d", "A1aff", "--height", "3"], dir.path());
    assert!(json(&out)["affine"]["delta"].is_array());
}
