use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn hokdv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hokdv")).args(args).output().expect("spawn hokdv")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

const SIMULATE: &str = r#"{
  "version": 1,
  "params": { "n": 5, "p": 3 },
  "grid": { "length": 1024.0, "count": 2048 },
  "epsilon": 0.1,
  "t_final": 10.0,
  "dt": 0.1,
  "initial": { "kind": "gaussian", "center": 0.0, "width": 4.0 },
  "samples": { "kind": "uniform", "count": 6 },
  "checks": ["conservation"],
  "perturbation": { "amplitude": 0.2, "bumps": 3, "width": 5.0, "spread": 10.0 },
  "seed": 3
}"#;

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

/// File name → contents, for every file in `dir`.
fn snapshot(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect();
    files.sort();
    files
}

#[test]
fn resonance_table_for_5_3() {
    let o = hokdv(&["resonances", "--n", "5", "--p", "3"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("j,divisor,multiplicity,d,"));
    let rows: Vec<(u32, f64)> = lines
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect();
    assert_eq!(rows.iter().map(|r| r.0).collect::<Vec<_>>(), vec![0, 1, 2]);
    assert_eq!(rows[0].1, 0.0);
    assert_eq!(rows[1].1, 0.0);
    assert!((rows[2].1 - (1.0 - 3f64.powi(-4))).abs() < 1e-12);
}

#[test]
fn usage_errors_exit_2() {
    let o = hokdv(&["resonances", "--n", "5", "--p", "3", "--bogus"]);
    assert_eq!(code(&o), 2);
    let o = hokdv(&["simulate", "--config", "missing.json"]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("missing.json") && err.contains("No such file"), "{err}");
    assert_eq!(code(&hokdv(&["frobnicate"])), 2);
    assert_eq!(code(&hokdv(&["resonances", "--n", "4", "--p", "3"])), 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = write_config(dir.path(), "bad.json", &SIMULATE.replace("\"version\": 1", "\"version\": 9"));
    assert_eq!(code(&hokdv(&["simulate", "--config", &bad])), 2);
    let bad = write_config(dir.path(), "coarse.json", &SIMULATE.replace("\"count\": 2048", "\"count\": 256"));
    assert_eq!(code(&hokdv(&["simulate", "--config", &bad])), 2);
}

#[test]
fn failed_check_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let body = SIMULATE.replace("\"seed\": 3", "\"seed\": 3, \"conservation\": { \"mass\": 0.0, \"hamiltonian\": 0.0 }");
    let cfg = write_config(dir.path(), "strict.json", &body);
    let o = hokdv(&["simulate", "--config", &cfg]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8(o.stderr).unwrap().contains("check failed"));
}

#[test]
fn simulate_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "sim.json", SIMULATE);
    let out = dir.path().join("out");
    let o = hokdv(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let names: Vec<String> = snapshot(&out).into_iter().map(|f| f.0).collect();
    assert_eq!(names, vec!["final_u.dat", "samples.csv", "simulate.json"]);
    let csv = fs::read_to_string(out.join("samples.csv")).unwrap();
    assert!(csv.starts_with("t,mass,hamiltonian,linf,fhat_linf,boundary_fraction\n"));
    assert_eq!(csv.lines().count(), 7);
    let summary: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("simulate.json")).unwrap()).unwrap();
    assert_eq!(summary["pass"], true);
    assert!(summary["mass_drift"].as_f64().unwrap() < 1e-8);
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "sim.json", SIMULATE);
    let mut runs = vec![];
    for k in 0..2 {
        let out = dir.path().join(format!("run{k}"));
        let o = hokdv(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap(), "--seed", "42"]);
        assert_eq!(code(&o), 0);
        runs.push(snapshot(&out));
    }
    assert_eq!(runs[0], runs[1]);
    let a = hokdv(&["simulate", "--config", &cfg, "--format", "json"]).stdout;
    let b = hokdv(&["simulate", "--config", &cfg, "--format", "json"]).stdout;
    assert!(!a.is_empty() && a == b);
    // the seed reaches the perturbation
    let c = hokdv(&["simulate", "--config", &cfg, "--format", "json", "--seed", "4"]).stdout;
    assert_ne!(a, c);
}

#[test]
fn stationary_phase_defaults_to_fresnel() {
    let o = hokdv(&["stationary-phase", "--format", "json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let results = v["results"].as_array().unwrap();
    let expected = (2.0 * std::f64::consts::PI / 400.0).sqrt();
    for r in results {
        let (re, im) = (r["value"][0].as_f64().unwrap(), r["value"][1].as_f64().unwrap());
        assert!((re.hypot(im) / expected - 1.0).abs() < 0.01);
        assert!((im.atan2(re) - std::f64::consts::FRAC_PI_4).abs() < 0.01);
    }
    let config = concat!(env!("CARGO_MANIFEST_DIR"), "/configs/fresnel.json");
    let o = hokdv(&["stationary-phase", "--config", config, "--lambda", "100", "--probe", "50,100,200,400"]);
    assert_eq!(code(&o), 0);
}

#[test]
fn decay_on_small_linear_run() {
    let dir = tempfile::tempdir().unwrap();
    let body = r#"{
      "version": 1,
      "params": { "n": 5, "p": 2 },
      "grid": { "length": 65536.0, "count": 65536 },
      "epsilon": 0.05,
      "t0": 16.0,
      "t_final": 512.0,
      "dt": 0.1,
      "initial": { "kind": "windowed_gaussian", "center": 0.0, "width": 0.7, "cutoff": 1.0 },
      "samples": { "kind": "geometric", "count": 6 },
      "checks": ["linear_decay", "lp_decay"],
      "lp_exponent": 8.0
    }"#;
    let cfg = write_config(dir.path(), "decay.json", body);
    let out = dir.path().join("out");
    let o = hokdv(&["decay", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let names: Vec<String> = snapshot(&out).into_iter().map(|f| f.0).collect();
    assert_eq!(names, vec!["decay.json", "fits.csv", "linear.csv", "lp.csv"]);

    // lp check with a q violating the exponent condition is a usage error
    let cfg = write_config(dir.path(), "decay2.json", &body.replace("\"lp_exponent\": 8.0", "\"lp_exponent\": 2.0"));
    assert_eq!(code(&hokdv(&["decay", "--config", &cfg])), 2);
}
