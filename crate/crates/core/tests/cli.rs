use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn zalcman(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zalcman"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_ok(args: &[&str]) -> Value {
    let out = zalcman(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn assert_schema(name: &str, doc: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("schemas")
        .join(format!("{name}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let validator = jsonschema::validator_for(&schema).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{name}: {errors:?}");
}

const FAST_SEARCH: [&str; 6] = ["--K", "2", "--starts", "2", "--dt", "0.01"];

#[test]
fn eval_koebe_identity() {
    let v = json_ok(&[
        "eval", "--theta", "0", "--lambda", "3", "--n", "2", "--m", "3",
    ]);
    assert_schema("eval", &v);
    assert_eq!(v["modulus"], 14.0);
    assert_eq!(v["bound"], 14.0);
    assert_eq!(v["attained"], true);
    assert_eq!(v["config"]["lambda"], 3.0);

    let v = json_ok(&[
        "eval", "--theta", "1.0", "--lambda", "3", "--n", "2", "--m", "3",
    ]);
    assert!((v["modulus"].as_f64().unwrap() - 14.0).abs() < 1e-12);
}

#[test]
fn eval_below_threshold_warns() {
    let out = zalcman(&["eval", "--lambda", "0.1", "--n", "2", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("warning"));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_schema("eval", &v);
    assert!(v["bound"].as_f64().unwrap() < 0.0);
    assert_eq!(v["attained"], false);
}

#[test]
fn schiffer_koebe() {
    let v = json_ok(&["schiffer", "--theta", "0", "--lambda", "3"]);
    assert_schema("schiffer", &v);
    assert!((v["E"]["re"].as_f64().unwrap() + 1.0).abs() < 1e-9);
    assert!(v["E"]["im"].as_f64().unwrap().abs() < 1e-9);
    for r in v["matchingResiduals"].as_array().unwrap() {
        assert!(r.as_f64().unwrap() < 1e-8);
    }
    for r in v["relationResiduals"].as_array().unwrap() {
        assert!(r.as_f64().unwrap() < 1e-8);
    }

    let v = json_ok(&["schiffer", "--theta", "1.0471975512", "--lambda", "3"]);
    let e = (
        v["E"]["re"].as_f64().unwrap(),
        v["E"]["im"].as_f64().unwrap(),
    );
    // −e^{−iπ/3}
    assert!(
        (e.0 + 0.5).abs() < 1e-6 && (e.1 - 3f64.sqrt() / 2.0).abs() < 1e-6,
        "{e:?}"
    );

    let v = json_ok(&["schiffer", "--theta", "0", "--lambda", "2"]);
    assert_eq!(v["P"]["re"], 0.0);
    assert_eq!(v["T"]["re"], 0.0);
}

#[test]
fn gmax_values() {
    let v = json_ok(&["gmax"]);
    assert_schema("gmax", &v);
    assert!((v["gMax"].as_f64().unwrap() - 21.0).abs() < 1e-9);
    assert!((v["bound"].as_f64().unwrap() - 14.0).abs() < 1e-9);
    assert!((v["criticalR"].as_f64().unwrap() - 1.0 / 12.0).abs() < 1e-8);
    assert!((v["interiorValue"].as_f64().unwrap() - 25.0 / 24.0).abs() < 1e-12);
}

#[test]
fn qd_files_and_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("t.svg");
    let csv = dir.path().join("t.csv");
    let v = json_ok(&[
        "qd",
        "--a2re",
        "1",
        "--a2im",
        "1",
        "--svg",
        svg.to_str().unwrap(),
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_schema("qd", &v);
    assert_eq!(v["xiStar"], 6.0);
    assert!((v["reAtXiStar"].as_f64().unwrap() + 7.0).abs() < 1e-12);
    assert_eq!(v["verdict"], true);
    let doc = std::fs::read_to_string(&svg).unwrap();
    assert!(doc.contains("<svg") && doc.contains("<path"));
    let table = std::fs::read_to_string(&csv).unwrap();
    assert!(table.starts_with("index,re,im\n"));

    let v = json_ok(&["qd", "--a2re", "1", "--a2im", "-0.5"]);
    assert_eq!(v["verdict"], true);
}

#[test]
fn qd_hypothesis_violation_exits_2() {
    let out = zalcman(&["qd", "--a2re", "-1", "--a2im", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = zalcman(&["qd", "--a2re", "1", "--a2im", "0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(zalcman(&["eval", "--bogus"]).status.code(), Some(2));
    assert_eq!(zalcman(&["eval", "--theta", "abc"]).status.code(), Some(2));
    assert_eq!(zalcman(&[]).status.code(), Some(2));
}

#[test]
fn computation_error_exits_1() {
    // no double zero away from the real-functional rotations
    let out = zalcman(&["schiffer", "--theta", "1.2", "--lambda", "3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn search_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let mut args = vec![
            "search", "--lambda", "3", "--n", "2", "--m", "3", "--seed", "7",
        ];
        args.extend(FAST_SEARCH);
        args.extend(["--out", p.to_str().unwrap()]);
        let out = zalcman(&args);
        assert_eq!(out.status.code(), Some(0));
    }
    let (ta, tb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    // the output path is part of the recorded config
    let strip = |t: &[u8], p: &Path| String::from_utf8_lossy(t).replace(p.to_str().unwrap(), "OUT");
    assert_eq!(strip(&ta, &a), strip(&tb, &b));
    let v: Value = serde_json::from_slice(&ta).unwrap();
    assert_schema("search", &v);
    assert!((v["bestValue"].as_f64().unwrap() - 14.0).abs() < 1e-3);
    assert!(v["redFlag"].is_null());
}

#[test]
fn sweep_writes_one_row_per_lambda() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let mut args = vec![
        "sweep",
        "--n",
        "2",
        "--m",
        "3",
        "--lambda-grid",
        "1.5,2,2.5,3",
    ];
    args.extend(FAST_SEARCH);
    args.extend(["--out", csv.to_str().unwrap()]);
    let v = json_ok(&args);
    assert_schema("sweep", &v);
    let table = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<_> = table.lines().collect();
    assert_eq!(lines[0], "lambda,empiricalMax,conjecturedBound,gap");
    assert_eq!(lines.len(), 5);
    let last = v["rows"][3]["gap"].as_f64().unwrap();
    assert!(last >= -1e-3);
}
