//! End-to-end tests of the `hall` binary.

use std::path::Path;
use std::process::{Command, Output};

use hall_core::families::corpus_entry;
use serde_json::Value;

fn hall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hall")).args(args).output().expect("spawn hall")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(o)))
}

fn path_arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn construct_k3_text() {
    let o = hall(&["construct", "--k", "3", "--format", "text", "--reduced"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("x = t^4 + 6*t^3 + 5*t^2 + 6*t + 4\n"), "{out}");
    assert!(out.contains("X = t^2 + 6*t + 4\n"));
    assert!(out.contains("r = -54*t - 297\n"), "{out}");
}

#[test]
fn construct_k27_matches_corpus() {
    let o = hall(&["construct", "--k", "27"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["status"], "verified");
    assert_eq!(v["command"], "construct");
    let payload = &v["payload"];
    assert_eq!(payload["degrees"], serde_json::json!({"x": 52, "y": 78, "d": 31}));
    assert_eq!(payload["ratio"], "31/52");
    let entry = corpus_entry("k27").unwrap();
    for (key, poly) in [("x", &entry.x), ("y", &entry.y), ("d", &entry.d)] {
        let ours: hall_core::IntPoly = serde_json::from_value(payload[key].clone()).unwrap();
        assert_eq!(&ours, poly.num(), "{key}");
    }
}

#[test]
fn construct_rejects_bad_k_with_usage_error() {
    for k in ["4", "1", "0", "-5"] {
        let o = hall(&["construct", "--k", k]);
        assert_eq!(o.status.code(), Some(2), "k = {k}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn json_round_trip_reverifies() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("k7.json");
    let o = hall(&["construct", "--k", "7"]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::write(&file, &o.stdout).unwrap();

    let v = hall(&["verify", "instance", "--input", path_arg(&file)]);
    assert_eq!(v.status.code(), Some(0), "{}", stdout(&v));
    assert_eq!(json(&v)["status"], "verified");

    // Tamper with one coefficient of d: verification fails with exit 1.
    let mut doc = json(&o);
    doc["payload"]["d"]["coeffs"][0] = Value::from("-296");
    std::fs::write(&file, serde_json::to_vec(&doc).unwrap()).unwrap();
    let v = hall(&["verify", "instance", "--input", path_arg(&file)]);
    assert_eq!(v.status.code(), Some(1));
    assert_eq!(json(&v)["status"], "failed");

    let v = hall(&["verify", "instance", "--input", path_arg(&dir.path().join("missing.json"))]);
    assert_eq!(v.status.code(), Some(2));
    let v = hall(&["verify", "instance"]);
    assert_eq!(v.status.code(), Some(2));
}

#[test]
fn verify_targets_pass() {
    for args in [
        &["verify", "corpus"][..],
        &["verify", "danilov-cubic"],
        &["verify", "danilov-quartic"],
        &["verify", "quartic-k3"],
        &["verify", "ansatz", "--k-max", "11"],
        &["verify", "pell", "--j-max", "12"],
        &["verify", "family", "--k-max", "21"],
    ] {
        let o = hall(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stdout(&o));
        let v = json(&o);
        assert_eq!(v["status"], "verified");
        assert!(!v["payload"]["reports"].as_array().unwrap().is_empty());
    }
}

#[test]
fn unknown_target_is_usage_error() {
    let o = hall(&["verify", "everything"]);
    assert_eq!(o.status.code(), Some(2));
    let o = hall(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn help_and_version_exit_zero() {
    let o = hall(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("construct"));
    let o = hall(&["--version"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn danilov_first_witness() {
    let o = hall(&["hall", "danilov", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "{\"source\":\"danilov n=1\",\"t\":null,\"x\":\"93844\",\"y\":\"28748141\",\"d\":\"-297\",\"ratio\":\"0.969512\"}\n"
    );
}

#[test]
fn specialize_k3_at_zero() {
    let o = hall(&["hall", "specialize", "--k", "3", "--t", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["t"], "0");
    assert_eq!((v["x"].as_str(), v["y"].as_str(), v["d"].as_str()), (Some("4"), Some("19"), Some("-297")));
}

#[test]
fn scan_writes_jsonl_to_out() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("scan.jsonl");
    let o = hall(&["hall", "scan", "--k", "5", "--t-from", "0", "--t-to", "9", "--out", path_arg(&file)]);
    assert_eq!(o.status.code(), Some(0));
    let summary = json(&o);
    let body = std::fs::read_to_string(&file).unwrap();
    let lines: Vec<&str> = body.lines().collect();
    assert_eq!(summary["payload"]["count"], lines.len());
    assert_eq!(lines.len(), 10);
    for (i, line) in lines.iter().enumerate() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["t"], i.to_string());
    }
    let o = hall(&["hall", "scan", "--k", "5", "--t-from", "3", "--t-to", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn count_s_flag_errors() {
    assert_eq!(hall(&["hall", "count-s", "--N", "1000"]).status.code(), Some(2));
    assert_eq!(hall(&["hall", "count-s", "--eps", "3/2"]).status.code(), Some(2));
    assert_eq!(hall(&["hall", "count-s", "--eps", "0/1", "--N", "1000"]).status.code(), Some(2));
    assert_eq!(hall(&["hall", "count-s", "--eps", "x", "--N", "1000"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["hall", "count-s", "--eps", "3/2", "--N", "10000000"][..],
        &["construct", "--k", "9", "--reduced"],
        &["hall", "danilov", "--n", "3"],
    ] {
        let a = hall(args);
        let b = hall(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn count_s_out_file_matches_payload() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("w.jsonl");
    let o = hall(&["hall", "count-s", "--eps", "3/2", "--N", "1000000", "--out", path_arg(&file)]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let body = std::fs::read_to_string(&file).unwrap();
    assert_eq!(body.lines().count() as u64, v["payload"]["count"].as_u64().unwrap());
    assert_eq!(v["payload"]["lower_bound_exponent"], "3/22");
}
