use padic_hl::harness::{run_experiment, to_json_17, Centering, Experiment, ExperimentConfig};
use padic_hl::qcore::rat;
use padic_hl::Error;

fn walk_config(seed: u64) -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(Experiment::Thm103, 10, 3000);
    cfg.t = Some(rat(1, 2));
    cfg.tau = Some(64.0);
    cfg.k = 2;
    cfg.seed = seed;
    cfg
}

#[test]
fn reports_are_reproducible() {
    let a = to_json_17(&run_experiment(&walk_config(5)).unwrap()).unwrap();
    let b = to_json_17(&run_experiment(&walk_config(5)).unwrap()).unwrap();
    let c = to_json_17(&run_experiment(&walk_config(6)).unwrap()).unwrap();
    assert_eq!(a, b);
    assert_ne!(a, c);
}

#[test]
fn product_experiment_is_certified_and_reproducible() {
    let mut cfg = ExperimentConfig::new(Experiment::Thm14, 6, 2000);
    cfg.p = Some(3);
    cfg.s = Some(16);
    cfg.certify_samples = 300;
    let a = run_experiment(&cfg).unwrap();
    let cert = a.certification.as_ref().unwrap();
    assert!(cert.dinf < cert.bound);
    assert!(a.max_top_part.unwrap() < a.precision.unwrap() as i64);
    assert_eq!(a.shift, Some(2));
    assert_eq!(a.centering, Some(Centering::Floor));
    let b = run_experiment(&cfg).unwrap();
    assert_eq!(to_json_17(&a).unwrap(), to_json_17(&b).unwrap());
}

#[test]
fn matrix_path_without_surrogate() {
    let mut cfg = ExperimentConfig::new(Experiment::Thm15, 4, 500);
    cfg.p = Some(2);
    cfg.s = Some(16);
    cfg.d = Some(1);
    cfg.surrogate = false;
    let r = run_experiment(&cfg).unwrap();
    assert!(r.certification.is_none());
    assert_eq!(r.samples, 500);
}

#[test]
fn saturation_aborts() {
    let mut cfg = ExperimentConfig::new(Experiment::Thm14, 4, 200);
    cfg.p = Some(2);
    cfg.s = Some(16);
    cfg.precision = Some(2);
    cfg.surrogate = false;
    assert_eq!(run_experiment(&cfg).unwrap_err(), Error::Saturated(2));
}

#[test]
fn outputs_are_appended() {
    let dir = std::env::temp_dir().join(format!("padic-hl-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("runs.jsonl");
    let mut cfg = walk_config(1);
    cfg.samples = 200;
    cfg.output = Some(path.clone());
    run_experiment(&cfg).unwrap();
    run_experiment(&cfg).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 2);
    let csv = std::fs::read_to_string(path.with_extension("csv")).unwrap();
    assert!(csv.starts_with("experiment,params,dinf,tolerance,samples,pass"));
    assert_eq!(csv.lines().count(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}
