use std::process::{Command, Output};

use serde_json::Value;

fn monogamy(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monogamy"))
        .args(args)
        .env_remove("SOURCE_DATE_EPOCH")
        .env_remove("MONOGAMY_WORKERS")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn data_rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| {
            l.split(',')
                .map(|c| {
                    if c.is_empty() {
                        f64::NAN
                    } else {
                        c.parse().unwrap()
                    }
                })
                .collect()
        })
        .collect()
}

fn h2(p: f64) -> f64 {
    -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
}

#[test]
fn eval_w_entanglement_of_formation() {
    let out = monogamy(&["eval", "w3", "--measures", "eof", "--theorems", "ckw"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let eof = v["measures"]["eof"]["a_rest"].as_f64().unwrap();
    assert!((eof - h2(1.0 / 3.0)).abs() < 1e-12);
    assert!((eof - 0.918296).abs() < 5e-7);
    assert!(v["measures"].get("tangle").is_none());
}

#[test]
fn eval_ghz_tangle_is_one() {
    let out = monogamy(&["eval", "ghz3", "--measures", "tangle", "--theorems", "ckw"]);
    assert_eq!(out.status.code(), Some(0));
    let tau = json(&out)["measures"]["tangle"].as_f64().unwrap();
    assert!((tau - 1.0).abs() < 1e-12);
}

#[test]
fn eval_product_state_file_is_unentangled() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("prod.json");
    let s = 0.5f64.sqrt();
    // |+⟩|0⟩|1⟩
    let text = format!(
        r#"{{"n_qubits": 3, "amplitudes": [[0,0],[{s},0],[0,0],[0,0],[0,0],[{s},0],[0,0],[0,0]]}}"#
    );
    std::fs::write(&path, text).unwrap();
    let out = monogamy(&["eval", path.to_str().unwrap(), "--theorems", "ckw"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let m = &json(&out)["measures"];
    assert!(m["concurrence"]["a_rest"].as_f64().unwrap().abs() < 1e-12);
    assert!(m["eof"]["a_rest"].as_f64().unwrap().abs() < 1e-12);
    assert!(m["tangle"].as_f64().unwrap().abs() < 1e-12);
    for p in m["coa"].as_array().unwrap() {
        assert!(p["value"].as_f64().unwrap().abs() < 1e-12);
    }
}

#[test]
fn eval_writes_report_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = monogamy(&[
        "eval",
        "w3",
        "--theorems",
        "t1,t4",
        "--alpha",
        "2,3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
    assert!(!json(&out)["report"]["results"]
        .as_array()
        .unwrap()
        .is_empty());
}

#[test]
fn unknown_state_and_missing_file_are_errors() {
    let out = monogamy(&["eval", "not-a-state"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("w3"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"n_qubits": 2, "amplitudes": [[1,0]]}"#).unwrap();
    assert_eq!(
        monogamy(&["eval", bad.to_str().unwrap()]).status.code(),
        Some(1)
    );
}

#[test]
fn regime_errors_exit_one() {
    let out = monogamy(&["eval", "w3", "--theorems", "t1", "--alpha", "1.5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fuzz_zero_count_is_usage_error() {
    let out = monogamy(&["fuzz", "--qubits", "3", "--count", "0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
}

#[test]
fn fuzz_out_of_range_qubits_is_usage_error() {
    assert_eq!(
        monogamy(&["fuzz", "--qubits", "6", "--count", "3"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        monogamy(&["fuzz", "--qubits", "2", "--count", "3"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn fuzz_is_reproducible() {
    let args = [
        "fuzz",
        "--qubits",
        "3",
        "--count",
        "20",
        "--seed",
        "7",
        "--theorems",
        "ckw,t1,t2,t4",
    ];
    let a = monogamy(&args);
    let b = monogamy(&args);
    assert_eq!(
        a.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&a.stderr)
    );
    assert_eq!(a.stdout, b.stdout);

    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.contains("# seed: 7"));
    let header = text.lines().find(|l| !l.starts_with('#')).unwrap();
    assert_eq!(header, "state_id,theorem,alpha,lhs,rhs,margin,outcome");
    assert!(String::from_utf8_lossy(&a.stderr).contains("sign witnesses"));
}

#[test]
fn fuzz_worker_count_does_not_change_output() {
    let args = [
        "fuzz",
        "--qubits",
        "4",
        "--count",
        "12",
        "--seed",
        "3",
        "--theorems",
        "t1",
    ];
    let one = Command::new(env!("CARGO_BIN_EXE_monogamy"))
        .args(args)
        .env("MONOGAMY_WORKERS", "1")
        .env_remove("SOURCE_DATE_EPOCH")
        .output()
        .unwrap();
    let many = monogamy(&args);
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn fuzz_csv_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fuzz.csv");
    let out = monogamy(&[
        "fuzz",
        "--qubits",
        "5",
        "--count",
        "4",
        "--theorems",
        "t1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let rows = text.lines().filter(|l| !l.starts_with('#')).count() - 1;
    // four default α values per state
    assert_eq!(rows, 16);
}

#[test]
fn figure_w_residuals_anchors() {
    let out = monogamy(&[
        "figure",
        "--which",
        "w-residuals",
        "--alpha-min",
        "1.5",
        "--alpha-max",
        "4",
        "--points",
        "51",
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = data_rows(std::str::from_utf8(&out.stdout).unwrap());
    assert_eq!(rows.len(), 51);
    for r in &rows {
        if r[0] < 2.0 {
            assert!(r[1].is_nan());
        } else {
            let want = (4.0f64 / 9.0).powf(r[0] / 2.0) * (2.0f64.powf(r[0] / 2.0) - 2.0);
            assert!(
                (r[1] - want).abs() < 1e-10,
                "α={} got {} want {want}",
                r[0],
                r[1]
            );
        }
    }
    let at2 = rows.iter().find(|r| (r[0] - 2.0).abs() < 1e-12).unwrap();
    assert!(at2[1].abs() < 1e-10);
}

#[test]
fn figure_eoa_bound_anchor() {
    let out = monogamy(&["figure", "--which", "eoa-bound", "--points", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = data_rows(std::str::from_utf8(&out.stdout).unwrap());
    assert!((rows[0][0] - 2f64.sqrt()).abs() < 1e-10);
    assert!((rows[0][1] - 0.623).abs() < 5e-4);
    assert!((rows[1][0] - 4.0).abs() < 1e-12);
}

#[test]
fn figure_bad_grid_is_error() {
    let out = monogamy(&[
        "figure",
        "--which",
        "eoa-bound",
        "--alpha-min",
        "3",
        "--alpha-max",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn classify_labels() {
    let w = monogamy(&["classify", "w3"]);
    assert_eq!(w.status.code(), Some(0));
    let text = String::from_utf8(w.stdout).unwrap();
    assert!(text.contains("label: genuine"));
    assert!(text.contains("α>2"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zero.json");
    std::fs::write(
        &path,
        r#"{"n_qubits": 3, "amplitudes": [[1,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]}"#,
    )
    .unwrap();
    let out = monogamy(&["classify", path.to_str().unwrap(), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["label"], "fully_product");
}

#[test]
fn classify_rejects_grid_without_two() {
    assert_eq!(
        monogamy(&["classify", "w3", "--alpha-grid", "3,4"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn stamp_adds_timestamp() {
    let plain = monogamy(&["figure", "--which", "eoa-bound", "--points", "2"]);
    assert!(String::from_utf8_lossy(&plain.stdout).contains("# timestamp: none"));
    let stamped = monogamy(&["--stamp", "figure", "--which", "eoa-bound", "--points", "2"]);
    assert!(!String::from_utf8_lossy(&stamped.stdout).contains("# timestamp: none"));
}

#[test]
fn help_exits_zero() {
    assert_eq!(monogamy(&["--help"]).status.code(), Some(0));
    assert_eq!(monogamy(&[]).status.code(), Some(1));
}
