use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_padic-hl"));
    cmd.args(args).env_remove("RMT_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn temp(name: &str, contents: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("padic-hl-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn pmf_methods_agree() {
    let mut vals = Vec::new();
    for method in ["series", "contour", "closed"] {
        let out = run(&["pmf", "--k", "1", "--t", "1/2", "--chi", "1", "--L", "-1", "--method", method], &[]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
        vals.push(json(&out)["pmf"].as_f64().unwrap());
    }
    assert!((vals[0] - vals[1]).abs() < 1e-6 && (vals[0] - vals[2]).abs() < 1e-12);
    let text = String::from_utf8(run(&["pmf", "--k", "1", "--t", "1/2", "--chi", "1", "--L", "0"], &[]).stdout).unwrap();
    let digits = text.split("\"pmf\":").nth(1).unwrap().split('e').next().unwrap();
    assert_eq!(digits.chars().filter(|c| c.is_ascii_digit()).count(), 17);
}

#[test]
fn pmf_rejects_bad_input() {
    let out = run(&["pmf", "--k", "2", "--t", "1/2", "--chi", "1", "--L", "0", "1"], &[]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["pmf", "--k", "1", "--t", "3/2", "--chi", "1", "--L", "0"], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_passes() {
    let out = run(&["verify"], &[]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["pass"], Value::Bool(true));
    assert!(!v["k3"]["printed_mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn simulate_honours_seed_env_and_tolerance() {
    let cfg = temp("walk.json", r#"{"experiment":"thm10.3","t":"1/2","N":8,"tau":32,"k":1,"samples":2000,"seed":1}"#);
    let cfg = cfg.to_str().unwrap();
    let args = ["simulate", "--experiment", "thm10.3", "--config", cfg];
    let a = run(&args, &[]);
    let b = run(&args, &[("RMT_SEED", "1")]);
    let c = run(&args, &[("RMT_SEED", "2")]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
    assert_eq!(json(&a)["config"]["seed"], Value::from(1));

    let strict = temp("strict.json", r#"{"experiment":"thm10.3","t":"1/2","N":8,"tau":32,"samples":200,"tolerance":1e-9}"#);
    let out = run(&["simulate", "--experiment", "thm10.3", "--config", strict.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["simulate", "--experiment", "appB", "--config", cfg], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compare_reads_reports() {
    let cfg = temp("appb.json", r#"{"experiment":"appB","p":2,"N":2,"tau":2,"samples":1000}"#);
    let out = run(&["simulate", "--experiment", "appB", "--config", cfg.to_str().unwrap()], &[]);
    let report = temp("report.json", std::str::from_utf8(&out.stdout).unwrap());
    let v = json(&out);
    let law = temp("law.json", &serde_json::to_string(&v["theoretical"]).unwrap());
    let out = run(&["compare", "--a", report.to_str().unwrap(), "--b", law.to_str().unwrap()], &[]);
    assert!(out.status.success());
    let d = json(&out)["dinf"].as_f64().unwrap();
    assert!((d - v["dinf"].as_f64().unwrap()).abs() < 1e-15);
    let out = run(&["compare", "--a", report.to_str().unwrap(), "--b", law.to_str().unwrap(), "--tolerance", "0"], &[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sample_hl_is_seeded() {
    let args = ["sample-hl", "--lambda", "2", "1", "0", "--x", "0.5", "--n", "3", "--t", "1/2", "--samples", "20"];
    let a = run(&args, &[]);
    let b = run(&args, &[]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let lines: Vec<Vec<i64>> = String::from_utf8(a.stdout).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 20);
    for nu in lines {
        assert!(nu[0] >= 2 && nu[1] >= 1 && nu[1] <= 2 && nu[2] <= 1);
    }
    let out = run(&["sample-hl", "--lambda", "0", "--t", "1/2", "--powers-of-t", "--steps", "3"], &[]);
    assert!(out.status.success());
}
