use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_remez-lab"))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("remez-lab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

const F: &str = r#"{"K":3,"n":2,"d":3,"terms":[{"alpha":[1,0],"re":2.0,"im":0.0},{"alpha":[1,2],"re":3.0,"im":0.0}]}"#;

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["norm"]).status.code(), Some(2));
    assert_eq!(run(&["certify"]).status.code(), Some(2));
    assert_eq!(run(&["lift", "--K", "3", "--z-re", "0.5", "--z-im", "0"]).status.code(), Some(2));
}

#[test]
fn malformed_polynomial_is_reported_with_context() {
    let bad = scratch("bad.json", r#"{"K":3,"n":1,"d":3,"terms":[{"alpha":[3],"re":1.0,"im":0.0}]}"#);
    let out = run(&["decompose", "--in", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("terms[0].alpha[0]"));
}

#[test]
fn lift_emits_measure() {
    let out = run(&["lift", "--K", "3", "--z-re", "-0.05", "--z-im", "0.02"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["probs"].as_array().unwrap().len(), 6);
    assert_eq!(v["pass"], Value::Bool(true));
}

#[test]
fn project_decompose_reduce_norm_bh() {
    let f = scratch("f.json", F);
    let p = f.to_str().unwrap();

    let out = run(&["project", "--in", p]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["projection"]["terms"][0]["re"], 9.0);
    assert_eq!(v["ratio"], 1.8);

    let set = scratch("set.json", "[[1,2]]");
    let out = run(&["project", "--in", p, "--set", set.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mixed = scratch("mixed.json", "[[1,2],[1,0]]");
    assert_eq!(run(&["project", "--in", p, "--set", mixed.to_str().unwrap()]).status.code(), Some(2));

    let out = run(&["decompose", "--in", p]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["classes"].as_array().unwrap().len(), 2);

    let out = run(&["reduce", "--in", p]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["g"]["K"] == 3);

    let out = run(&["norm", "--in", p, "--grid", "3", "--grid", "6", "--torus", "--seed", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["grids"].as_array().unwrap().len(), 2);
    assert!(v["torus"]["torus_lower"].as_f64().unwrap() > 4.99);

    let out = run(&["bh", "--in", p]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn certify_tables() {
    let out = run(&["certify", "--d", "2", "--K", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["levels"].as_array().unwrap().len(), 3);
    assert!(v["c"].as_f64().unwrap() > 1.0);
    let f = scratch("g.json", F);
    let dest = std::env::temp_dir().join(format!("remez-lab-cert-{}.json", std::process::id()));
    let out = run(&["certify", "--in", f.to_str().unwrap(), "--out", dest.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&dest).unwrap()).unwrap();
    assert_eq!(written["sound"], Value::Bool(true));
}

#[test]
fn sweep_exit_codes() {
    let ok = scratch("ok.json", r#"{"suite":"dk-bound","n":[1,3],"d":[1,3],"K":[3,4],"trials":3,"seed":1}"#);
    let csv = std::env::temp_dir().join(format!("remez-lab-sweep-{}.csv", std::process::id()));
    let out = run(&["sweep", "--config", ok.to_str().unwrap(), "--csv", csv.to_str().unwrap(), "--seed", "5"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["environment"]["seed"], 5);
    assert!(std::fs::read_to_string(&csv).unwrap().starts_with("n,d,K,max_ratio,bound"));

    let capped =
        scratch("capped.json", r#"{"suite":"bh-ratio","n":[1,3],"d":[2,2],"K":[3,3],"trials":2,"seed":1,"cap":10}"#);
    assert_eq!(run(&["sweep", "--config", capped.to_str().unwrap()]).status.code(), Some(1));

    let broken = scratch("broken.json", r#"{"suite":"dk-bound"}"#);
    assert_eq!(run(&["sweep", "--config", broken.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn cap_environment_variable() {
    let f = scratch("cap.json", F);
    let out = bin().args(["norm", "--in", f.to_str().unwrap()]).env("REMEZ_LAB_CAP", "4").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cap 4"));
}
