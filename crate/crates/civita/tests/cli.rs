use std::process::{Command, Output};

use serde_json::Value;

fn civita(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_civita")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = civita(args);
    assert!(out.status.success(), "{:?}: {}", args, String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("JSON on stdout")
}

#[test]
fn eval_examples() {
    assert_eq!(json(&["eval", "st(3 + 5*d)"])["value"], "3");
    assert_eq!(json(&["eval", "lambda(d^(1/2)+d)"])["value"], "1/2");
    let series = json(&["--mode", "exact", "--depth", "4", "eval", "1/(1-d)"]);
    assert_eq!(series["value"], "1 + d + d^2 + d^3 + d^4");
    assert_eq!(json(&["eval", "1"])["schema"], 1);
}

#[test]
fn measure_examples() {
    let r = json(&["--mode", "exact", "measure", "--set", r#"[[0, "1+d"]]"#]);
    assert_eq!(r["m"], "1 + d");
    assert_eq!(r["m_L"], 1.0);
    assert_eq!(r["shadow"]["measure"], 1.0);
    let r = json(&["--mode", "exact", "measure", "--scaling-example"]);
    let got: Vec<_> = r["cases"].as_array().unwrap().iter().map(|c| c["m_L"].clone()).collect();
    assert_eq!(got, vec![Value::from(3.0), Value::from(0.0), Value::from("+inf")]);
}

#[test]
fn measure_batch_is_deterministic_csv() {
    let a = civita(&["--seed", "5", "--output", "csv", "measure", "--batch", "20"]);
    let b = civita(&["--seed", "5", "--output", "csv", "measure", "--batch", "20"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let mut rdr = csv::Reader::from_reader(&a.stdout[..]);
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), ["set_id", "m", "st_m", "m_L", "shadow_measure", "coherent"]);
    let rows: Vec<_> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| &r[5] == "true"));
}

#[test]
fn integrate_examples() {
    let r = json(&["integrate", "--ext", "sin(x)", "--order", "2", "--interval", "[0,pi]"]);
    assert!((r["value"].as_f64().unwrap() - 2.0).abs() <= 1e-9);
    assert_eq!(r["route"], "lifting");
    let r = json(&["integrate", "--power", "a=-1", "--interval", "[1,10]"]);
    assert!((r["value"].as_f64().unwrap() - 10f64.ln()).abs() <= 1e-9);
    let r = json(&["integrate", "--limit", "aq", "--q", "0", "--power", "a=-2"]);
    assert_eq!(r["verdict"], "converged");
    assert!((r["value"].as_f64().unwrap() - 1.0).abs() <= 1e-6);
    assert!(r["trace"].as_array().unwrap().len() > 3);
    let r = json(&["integrate", "--limit", "aq", "--q", "0", "--power", "a=-1/2"]);
    assert_eq!(r["verdict"], "+inf");
}

#[test]
fn locator_fails_ftc_without_failing_the_command() {
    let r = json(&["integrate", "--locator", "--interval", "[-1,1]", "--ftc"]);
    assert_eq!(r["lhs"], 1.0);
    assert_eq!(r["rhs"], 0.0);
    assert_eq!(r["measurable"], false);
}

#[test]
fn delta_examples() {
    let r = json(&["delta", "--f", "sin(x)", "--r", "0.3"]);
    assert!((r["computed"].as_f64().unwrap() - 0.3f64.sin()).abs() <= 1e-9);
    let r = json(&["delta", "--f", "x^3", "--r", "1", "--m", "2"]);
    assert!((r["computed"].as_f64().unwrap() - 6.0).abs() <= 1e-9);
    let out = civita(&["delta", "--f", "x^2", "--r", "0", "--m", "3", "--k", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("smoothness"));
}

#[test]
fn exit_codes() {
    assert_eq!(civita(&["eval", "1 +"]).status.code(), Some(2));
    assert_eq!(civita(&["--depth", "2", "eval", "1"]).status.code(), Some(2));
    assert_eq!(civita(&["--tol", "0", "eval", "1"]).status.code(), Some(2));
    assert_eq!(civita(&["bogus"]).status.code(), Some(2));
    assert_eq!(civita(&["measure", "--set", "[[0, 2], [1, 3]]"]).status.code(), Some(2));
    // a limit over windows of infinite measure is a runtime refusal
    assert_eq!(civita(&["integrate", "--limit", "bq", "--q", "-1", "--power", "-2"]).status.code(), Some(1));
    assert_eq!(civita(&["suite", "nope"]).status.code(), Some(2));
    // rounding leaves a residual near 1e-15, far above this tolerance
    let out = civita(&["--tol", "1e-300", "delta", "--f", "exp(x)", "--r", "0.7", "--k", "2", "--m", "2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("verification failed"));
}

#[test]
fn suite_reports_one_criterion() {
    let r = json(&["suite", "scaling-example"]);
    assert_eq!(r["passed"], true);
    assert_eq!(r["criteria"][0]["id"], 5);
}
