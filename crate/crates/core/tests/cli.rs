//! The command-line front end: documented examples, exit codes, JSON shape.

use std::process::{Command, Output};

use sobolex::bases::Basis;
use sobolex::verify::VerifyReport;

fn sobolex(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sobolex"))
        .args(args)
        .env("SOBOLEX_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn display(o: &Output) -> Vec<String> {
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    v["display"].as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect()
}

#[test]
fn rodrigue_basis_example() {
    let o = sobolex(&["basis", "--d", "2", "--n", "1", "--gamma", "0,0,0", "--family", "rodrigue"]);
    assert_eq!(o.status.code(), Some(0));
    let shown = display(&o);
    assert!(shown.contains(&"1 - 2*x - y".to_string()) && shown.contains(&"1 - x - 2*y".to_string()));
}

#[test]
fn constant_monomial_basis() {
    let o = sobolex(&["basis", "--d", "2", "--n", "0", "--gamma", "0,0,0", "--family", "monomial"]);
    assert_eq!(display(&o), vec!["1"]);
}

#[test]
fn redefined_linear_space() {
    let o = sobolex(&["basis", "--d", "2", "--n", "1", "--gamma", "-1,-1,-1", "--family", "u", "--lambda-vertex", "1,1,1"]);
    assert_eq!(display(&o), vec!["-1/3 + x", "-1/3 + y"]);
}

#[test]
fn basis_json_round_trips() {
    let o = sobolex(&["basis", "--d", "3", "--n", "2", "--gamma", "1/2,0,-1,-1"]);
    assert_eq!(o.status.code(), Some(0));
    let b: Basis = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(b.len(), 6);
    let again = serde_json::to_value(&b).unwrap();
    let parsed: Basis = serde_json::from_value(again).unwrap();
    assert_eq!(parsed, b);
}

#[test]
fn gram_against_lower_degree_vanishes() {
    let o = sobolex(&["gram", "--d", "2", "--n", "3", "--gamma", "1/2,-1,-1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["all_zero"], true);
    assert_eq!(v["orthogonal_to_lower_degree"], true);
}

#[test]
fn degenerate_form_is_not_positive() {
    let o = sobolex(&[
        "gram", "--d", "2", "--n", "2", "--gamma", "-1,-1,-1", "--family", "monomials", "--against", "same",
        "--lambda-subset", "1=0;2=0", "--lambda-vertex", "0,0,0",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["positive_definite"], false);
    assert_eq!(v["valid_spec"], false);
}

#[test]
fn one_by_one_gram() {
    let o = sobolex(&["gram", "--d", "2", "--n", "0", "--gamma", "0,0,0", "--family", "monomials", "--against", "same"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["matrix"][0][0], "1");
}

#[test]
fn inner_product_of_expressions() {
    let o = sobolex(&["inner", "--d", "2", "--gamma", "0,0,-1", "--f", "x", "--g", "x"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    // ∫ x·(∂_x x)² over the triangle plus ∫ x² on the edge x + y = 1: 1/3 + 1/3.
    assert_eq!(v["value"], "2/3");
}

#[test]
fn verify_examples_pass() {
    for args in [
        vec!["verify", "--suite", "thm34", "--d", "2", "--n-max", "4"],
        vec!["verify", "--suite", "lemmas4", "--d", "3", "--n-max", "3"],
        vec!["verify", "--suite", "jacobi", "--n-max", "5"],
    ] {
        let o = sobolex(&args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let r: VerifyReport = serde_json::from_slice(&o.stdout).unwrap();
        assert!(r.pass && r.failed == 0 && r.checks > 0);
    }
}

#[test]
fn verify_accepts_gamma_samples() {
    let o = sobolex(&["verify", "--suite", "rodrigue", "--d", "2", "--n-max", "2", "--gamma", "2,1/3,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("γ=(2,1/3,0)"));
}

#[test]
fn exit_codes() {
    // Usage errors.
    assert_eq!(sobolex(&["basis", "--d", "2", "--n", "1", "--gamma", "1/x,0,0"]).status.code(), Some(2));
    assert_eq!(sobolex(&["basis", "--d", "2", "--n", "1", "--gamma", "0,0"]).status.code(), Some(2));
    assert_eq!(sobolex(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(sobolex(&["frobnicate"]).status.code(), Some(2));
    // Mathematical preconditions.
    let o = sobolex(&["basis", "--d", "2", "--n", "1", "--gamma", "-1,0,-1", "--family", "u"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("trailing block"));
    assert_eq!(sobolex(&["inner", "--d", "1", "--gamma", "-3/2,0", "--f", "1", "--g", "1"]).status.code(), Some(3));
}

#[test]
fn pretty_output_is_plain_text() {
    let o = sobolex(&["--pretty", "eigen", "--d", "2", "--n", "2", "--gamma", "0,-1,-1"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.starts_with("eigenvalue -4"));
    assert!(serde_json::from_str::<serde_json::Value>(&s).is_err());
}

#[test]
fn report_summarizes_suites() {
    let o = sobolex(&["report", "--d", "2", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["suites"].as_array().unwrap().len(), 8);
}
