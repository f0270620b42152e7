use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn dvpack(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dvpack"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn pack_catalog(dir: &TempDir, bin: &str, compression: &str) -> std::path::PathBuf {
    let out = dir.path().join(format!("{bin}-{compression}.json"));
    let res = dvpack(&[
        "pack",
        "--builtin",
        "catalog",
        "--bin",
        bin,
        "--compression",
        compression,
        "-o",
        path_str(&out),
    ]);
    assert!(
        res.status.success(),
        "{}",
        String::from_utf8_lossy(&res.stderr)
    );
    out
}

#[test]
fn pack_writes_solution_with_metrics() {
    let dir = TempDir::new().unwrap();
    let out = pack_catalog(&dir, "small", "on");
    let doc = read_json(&out);
    let count = doc["steps"].as_array().unwrap().len();
    assert!((20..=35).contains(&count), "{count} items");
    assert_eq!(
        doc["metrics"]["item_count"].as_u64().unwrap() as usize,
        count
    );
    assert!(doc["metrics"]["utilization"].as_f64().unwrap() > 0.0);
    assert_eq!(doc["format_version"], 1);
    assert_eq!(doc["compression"], true);
    let first = &doc["steps"][0];
    for key in [
        "index",
        "item_name",
        "rotation_type",
        "x",
        "y",
        "z",
        "rot_depth",
        "rot_width",
        "rot_height",
        "true_height",
        "true_compression",
    ] {
        assert!(first.get(key).is_some(), "missing {key}");
    }
    let total = count + doc["unpacked"].as_array().unwrap().len();
    assert_eq!(total, 215);
}

#[test]
fn unknown_bin_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("x.json");
    let res = dvpack(&[
        "pack",
        "--builtin",
        "catalog",
        "--bin",
        "gigantic",
        "-o",
        path_str(&out),
    ]);
    assert_eq!(res.status.code(), Some(2));
    let err = String::from_utf8_lossy(&res.stderr);
    assert!(err.contains("small, medium, large, larger"), "{err}");
    assert!(!out.exists());
}

#[test]
fn missing_instance_file_is_an_input_error() {
    let res = dvpack(&[
        "pack",
        "--instance",
        "/nonexistent/instance.json",
        "--bin",
        "small",
        "-o",
        "/tmp/never.json",
    ]);
    assert_eq!(res.status.code(), Some(2));
}

#[test]
fn validate_accepts_pack_output() {
    let dir = TempDir::new().unwrap();
    for compression in ["on", "off"] {
        let out = pack_catalog(&dir, "larger", compression);
        let res = dvpack(&["validate", path_str(&out)]);
        assert_eq!(
            res.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&res.stdout)
        );
    }
}

#[test]
fn validate_reports_overlap_and_floating_items() {
    let dir = TempDir::new().unwrap();
    let out = pack_catalog(&dir, "small", "off");
    let original = read_json(&out);

    let mut overlap = original.clone();
    overlap["steps"][1]["x"] = overlap["steps"][0]["x"].clone();
    overlap["steps"][1]["y"] = overlap["steps"][0]["y"].clone();
    overlap["steps"][1]["z"] = overlap["steps"][0]["z"].clone();
    let p = dir.path().join("overlap.json");
    std::fs::write(&p, serde_json::to_string_pretty(&overlap).unwrap()).unwrap();
    let res = dvpack(&["validate", path_str(&p)]);
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&res.stdout).contains("no-overlap"));

    let mut floating = original;
    let last = floating["steps"].as_array().unwrap().len() - 1;
    floating["steps"][last]["z"] = Value::from(34.0);
    floating["steps"][last]["true_height"] = Value::from(0.5);
    floating["steps"][last]["rot_height"] = floating["steps"][last]["true_height"].clone();
    let p = dir.path().join("floating.json");
    std::fs::write(&p, serde_json::to_string_pretty(&floating).unwrap()).unwrap();
    let res = dvpack(&["validate", path_str(&p)]);
    assert_eq!(res.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&res.stdout).contains("stability"));
}

#[test]
fn validate_rejects_malformed_file() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("bad.json");
    std::fs::write(&p, "{ \"steps\": [").unwrap();
    assert_eq!(dvpack(&["validate", path_str(&p)]).status.code(), Some(2));
}

#[test]
fn compare_report_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let res = dvpack(&[
            "compare",
            "--builtin",
            "catalog",
            "--seed",
            "5",
            "-o",
            path_str(p),
        ]);
        assert!(res.status.success());
        assert!(String::from_utf8_lossy(&res.stdout).contains("Small bin"));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let doc = read_json(&a);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 4);
    assert_eq!(doc["summary"].as_array().unwrap().len(), 5);
}

#[test]
fn compare_rigid_instance_has_zero_deltas() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{ "class_mix": [0, 0, 0, 1], "kind_count": 5 }"#).unwrap();
    let inst = dir.path().join("rigid.json");
    let res = dvpack(&[
        "generate",
        "--config",
        path_str(&cfg),
        "--seed",
        "11",
        "-o",
        path_str(&inst),
    ]);
    assert!(res.status.success());
    let report = dir.path().join("report.json");
    let res = dvpack(&[
        "compare",
        "--instance",
        path_str(&inst),
        "-o",
        path_str(&report),
    ]);
    assert!(res.status.success());
    for row in read_json(&report)["rows"].as_array().unwrap() {
        assert_eq!(row["delta_utilization"].as_f64(), Some(0.0));
        assert_eq!(row["delta_item_count"].as_i64(), Some(0));
        assert_eq!(row["delta_true_volume"].as_f64(), Some(0.0));
    }
}

#[test]
fn generate_is_deterministic_and_readable() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let c = dir.path().join("c.json");
    for (p, seed) in [(&a, "42"), (&b, "42"), (&c, "43")] {
        assert!(dvpack(&["generate", "--seed", seed, "-o", path_str(p)])
            .status
            .success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_ne!(std::fs::read(&a).unwrap(), std::fs::read(&c).unwrap());

    let sol = dir.path().join("sol.json");
    let res = dvpack(&[
        "pack",
        "--instance",
        path_str(&a),
        "--bin",
        "larger",
        "-o",
        path_str(&sol),
    ]);
    assert!(res.status.success());
    assert_eq!(dvpack(&["validate", path_str(&sol)]).status.code(), Some(0));
}

#[test]
fn generate_rejects_invalid_config() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("cfg.json");
    std::fs::write(&cfg, r#"{ "dims": [30, 10] }"#).unwrap();
    let out = dir.path().join("x.json");
    let res = dvpack(&["generate", "--config", path_str(&cfg), "-o", path_str(&out)]);
    assert_eq!(res.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&res.stderr).contains("dims"));
}

#[test]
fn pack_output_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let a = pack_catalog(&dir, "medium", "on");
    let bytes = std::fs::read(&a).unwrap();
    let b = pack_catalog(&dir, "medium", "on");
    assert_eq!(bytes, std::fs::read(b).unwrap());
}
