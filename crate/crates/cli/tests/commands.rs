use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn nilquat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilquat"))
        .args(args)
        .env_remove("NILQUAT_SEED")
        .output()
        .expect("spawn nilquat")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_cohomology_m1_reports_29() {
    let o = nilquat(&["verify", "--m", "1", "--suite", "cohomology"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("dim H1(W,D_W) = 29"));
}

#[test]
fn verify_algebra_m1_passes() {
    let o = nilquat(&["verify", "--m", "1", "--suite", "algebra", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let ids: Vec<&str> = v["checks"].as_array().unwrap().iter().map(|c| c["id"].as_str().unwrap()).collect();
    for id in ["algebra.jacobi", "algebra.center", "algebra.derived"] {
        assert!(ids.contains(&id));
    }
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}

#[test]
fn verify_aut_m2_reports_formula_triple() {
    let o = nilquat(&["verify", "--m", "2", "--suite", "aut"]);
    assert!(stdout(&o).contains("(81, 27, 54)"));
}

#[test]
fn verify_rejects_large_m_and_unknown_suite() {
    assert_eq!(nilquat(&["verify", "--m", "5"]).status.code(), Some(2));
    assert_eq!(nilquat(&["verify", "--m", "0"]).status.code(), Some(2));
    assert_eq!(nilquat(&["verify", "--m", "1", "--suite", "nope"]).status.code(), Some(2));
}

#[test]
fn seed_from_env_and_flag() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_nilquat"));
        c.args(["verify", "--m", "1", "--suite", "algebra", "--format", "json"]);
        c.env_remove("NILQUAT_SEED");
        if let Some(e) = env {
            c.env("NILQUAT_SEED", e);
        }
        if let Some(f) = flag {
            c.args(["--seed", f]);
        }
        let o = c.output().unwrap();
        (o.status.code(), serde_json::from_slice::<Value>(&o.stdout).ok())
    };
    let (_, v) = run(Some("17"), None);
    assert_eq!(v.unwrap()["seed"], 17);
    let (_, v) = run(Some("17"), Some("5"));
    assert_eq!(v.unwrap()["seed"], 5);
    let (code, _) = run(Some("abc"), None);
    assert_eq!(code, Some(2));
}

#[test]
fn dims_rows() {
    let o = nilquat(&["dims", "--m", "1..3", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let first: Vec<u64> = ["h1_w_d", "h1_w_theta", "torus", "torus_quaternionic"]
        .iter()
        .map(|k| rows[0][k].as_u64().unwrap())
        .collect();
    assert_eq!(first, vec![29, 26, 12, 9]);
    assert_eq!(rows[1]["h1_w_d"], 58);

    let single = nilquat(&["dims", "--m", "4", "--format", "json"]);
    let v: Value = serde_json::from_slice(&single.stdout).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 1);

    assert_eq!(nilquat(&["dims", "--m", "1..7"]).status.code(), Some(2));
    assert_eq!(nilquat(&["dims", "--m", "3..1"]).status.code(), Some(2));
}

#[test]
fn mc_fixture_residual_zero() {
    let f = fixture("phi1_m1.json");
    let o = nilquat(&["mc", "--m", "1", "--order", "4", "--phi1", &f, "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["series"].as_array().unwrap().len(), 4);
    let residual = v["report"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["id"] == "mc.residual")
        .unwrap();
    assert_eq!(residual["status"], "pass");
}

#[test]
fn mc_zero_and_bad_inputs() {
    let z = fixture("phi1_zero.json");
    assert_eq!(nilquat(&["mc", "--m", "1", "--order", "3", "--phi1", &z]).status.code(), Some(0));
    let f = fixture("phi1_m1.json");
    assert_eq!(nilquat(&["mc", "--m", "1", "--order", "0", "--phi1", &f]).status.code(), Some(2));
    assert_eq!(nilquat(&["mc", "--m", "1", "--order", "9", "--phi1", &f]).status.code(), Some(2));
    assert_eq!(nilquat(&["mc", "--m", "1", "--order", "2", "--phi1", "/nonexistent"]).status.code(), Some(2));
    let bad = std::env::temp_dir().join("nilquat_bad_phi1.json");
    std::fs::write(&bad, r#"[{"k": 3, "family": "HV", "i": 1, "j": 1, "beta": 1, "re": "1"}]"#).unwrap();
    let o = nilquat(&["mc", "--m", "1", "--order", "2", "--phi1", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

fn predicates(m: &str, file: &str) -> (Option<i32>, Option<Value>) {
    let f = fixture(file);
    let o = nilquat(&["check-aut", "--m", m, "--matrix", &f, "--format", "json"]);
    let v = serde_json::from_slice::<Value>(&o.stdout).ok().map(|v| v["predicates"].clone());
    (o.status.code(), v)
}

#[test]
fn check_aut_identity() {
    let (code, p) = predicates("1", "identity_m1.json");
    assert_eq!(code, Some(0));
    let p = p.unwrap();
    for k in ["lie_automorphism", "prop2_form", "hypercomplex", "prop3_form"] {
        assert_eq!(p[k], true, "{k}");
    }
    assert_eq!(p["s0"], "1");
}

#[test]
fn check_aut_prop2_not_prop3() {
    let (code, p) = predicates("1", "prop2_not_prop3_m1.json");
    assert_eq!(code, Some(0));
    let p = p.unwrap();
    assert_eq!(p["lie_automorphism"], true);
    assert_eq!(p["prop2_form"], true);
    assert_eq!(p["prop3_form"], false);
}

#[test]
fn check_aut_bad_inputs() {
    assert_eq!(predicates("1", "wrong_size_m1.json").0, Some(2));
    assert_eq!(predicates("2", "identity_m1.json").0, Some(2));
}
