use std::path::Path;
use std::process::{Command, Output};

fn icl(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_icl"))
        .args(args)
        .env("ICL_OUTPUT_DIR", dir)
        .output()
        .expect("spawn icl")
}

fn json(path: &Path) -> serde_json::Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn critical_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let out = icl(dir.path(), &["critical", "--x0", "1", "--L", "4", "--svg"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&dir.path().join("critical.json"));
    let f = v["report"]["F"].as_f64().unwrap();
    assert!((f - 11.532318211681279).abs() < 1e-12, "{f}");
    assert!(dir.path().join("critical_curve.json").exists());
    let svg = std::fs::read_to_string(dir.path().join("critical.svg")).unwrap();
    assert!(svg.contains("viewBox=\"0 0 800 500\""), "{svg:.200}");
}

#[test]
fn area_target_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let out = icl(dir.path(), &["critical", "--x0", "1", "--A0", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&dir.path().join("critical.json"));
    let l = v["params"]["L"].as_f64().unwrap();
    assert!(l > 3.0);
    assert!((v["report"]["area"].as_f64().unwrap() - 10.0).abs() < 1e-9);
}

#[test]
fn csv_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = icl(dir.path(), &["--format", "csv", "critical", "--x0", "1", "--L", "4", "6"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let names: Vec<String> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert!(names.iter().filter(|n| n.ends_with(".csv")).count() >= 2, "{names:?}");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(icl(dir.path(), &["critical", "--x0", "1", "--L", "3"]).status.code(), Some(2));
    assert_eq!(icl(dir.path(), &["critical", "--x0", "1", "--A0", "4.0"]).status.code(), Some(2));
    assert_eq!(icl(dir.path(), &["critical", "--x0", "-1", "--L", "4"]).status.code(), Some(1));
    assert_eq!(icl(dir.path(), &["critical", "--x0"]).status.code(), Some(1));
    assert_eq!(icl(dir.path(), &["frobnicate"]).status.code(), Some(1));
}

#[test]
fn reruns_are_byte_identical() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["steiner", "--corpus", "random", "--count", "12", "--seed", "5"];
    assert_eq!(icl(a.path(), &args).status.code(), Some(0));
    assert_eq!(icl(b.path(), &args).status.code(), Some(0));
    for name in ["steiner.json", "steiner_rows.json"] {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).unwrap();
        assert_eq!(x, y, "{name}");
    }
}

#[test]
fn steiner_symmetric_corpus_is_unchanged() {
    let dir = tempfile::tempdir().unwrap();
    let out = icl(dir.path(), &["steiner", "--corpus", "symmetric", "--count", "8"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&dir.path().join("steiner.json"));
    assert_eq!(v["summary"]["max_change_symmetric"].as_f64().unwrap(), 0.0);
    assert_eq!(v["summary"]["pass"], true);
}

#[test]
fn perturb_small_run() {
    let dir = tempfile::tempdir().unwrap();
    let out = icl(dir.path(), &["--fe-elements", "256", "perturb", "--count", "8", "--area"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&dir.path().join("perturb.json"));
    assert_eq!(v["pass"], true);
    assert!(v["min_delta"].as_f64().unwrap() > 0.0);
    assert!(dir.path().join("perturb_area_rows.json").exists());
}

#[test]
fn stability_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let out = icl(dir.path(), &["--fe-elements", "128", "stability", "--ratio-sweep", "0.1:0.2:0.05"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&dir.path().join("stability_sweep.json"));
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
}

#[test]
fn output_dir_flag_overrides_env() {
    let env_dir = tempfile::tempdir().unwrap();
    let flag_dir = tempfile::tempdir().unwrap();
    let out = icl(env_dir.path(), &["--output-dir", flag_dir.path().to_str().unwrap(), "critical", "--x0", "1", "--L", "4"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(flag_dir.path().join("critical.json").exists());
    assert!(!env_dir.path().join("critical.json").exists());
}
