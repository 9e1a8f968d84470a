use std::path::PathBuf;

use serde_json::Value;

fn dir(sub: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests").join(sub)
}

fn run(args: &[&str]) -> descentff::Outcome {
    let mut argv = vec!["descentff"];
    argv.extend_from_slice(args);
    descentff::run(&argv)
}

/// Compares the JSON report with `tests/golden/<name>.json`; `DESCENTFF_BLESS=1` rewrites it.
fn golden(name: &str, args: &[&str], code: i32) -> Value {
    let o = run(args);
    assert_eq!(o.code, code, "{name}: {}{}", o.stdout, o.stderr);
    let path = dir("golden").join(format!("{name}.json"));
    if std::env::var_os("DESCENTFF_BLESS").is_some() {
        std::fs::write(&path, &o.stdout).unwrap();
    }
    let want: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(o.report, want, "{name}");
    o.report
}

fn manifest(name: &str) -> String {
    dir("manifests").join(name).to_string_lossy().into_owned()
}

#[test]
fn classify() {
    let r = golden("classify", &["classify", "--p", "5", "--f", "t"], 0);
    assert_eq!(r["result"]["type"], "(1,0,0,0,1)");
}

#[test]
fn enumerate() {
    let r = golden("enumerate", &["enumerate", "--p", "7", "--f", "t^2 + 1", "--hmax", "1"], 0);
    assert_eq!(r["result"]["count"], 12);
}

#[test]
fn enumerate_tsv_rows() {
    let o = run(&["--format", "tsv", "enumerate", "--p", "7", "--f", "t^2 + 1", "--hmax", "1/3"]);
    assert_eq!(o.code, 0);
    let rows: Vec<&str> = o.stdout.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "x\ty\tc\tcount\th\thhat");
    assert_eq!(rows.len(), 4);
}

#[test]
fn height() {
    let r = golden("height", &["height", "--p", "7", "--f", "t^2 + 1", "--x", "3", "--y", "t"], 0);
    assert_eq!(r["result"]["canonical"], "1/3");
}

#[test]
fn descent() {
    golden("descent", &["descent", "--p", "7", "--f", "t^3 + 1", "--map", "phi3", "--trials", "40", "--caps"], 0);
}

#[test]
fn descent_of_a_point() {
    golden("descent_point", &["descent", "--p", "7", "--f", "t^2 + 1", "--map", "phi2", "--x", "3", "--y", "t"], 0);
}

#[test]
fn picard() {
    let r = golden("picard", &["picard", "--p", "7", "--f", "t^3 + 2*t + 1", "--curve", "c2", "--n", "2"], 0);
    assert_eq!(r["result"]["cardinality"], r["result"]["classes"].as_array().unwrap().len());
}

#[test]
fn verify_corsh2() {
    golden("verify_corsh2", &["verify-corsh2", "--p", "7", "--f", "t^3+2*t+1"], 0);
}

#[test]
fn verify_intbound() {
    golden("verify_intbound", &["verify-intbound", "--p", "5", "--f", "t^2 + 1"], 0);
}

#[test]
fn verify_table1() {
    let r = golden("verify_table1", &["verify-table1", "--p", "5", "--f", "t^3 + 1", "--stabilize"], 0);
    assert_eq!(r["field"]["extDegreeUsed"], 2);
}

#[test]
fn wbij() {
    golden("wbij", &["wbij", "--p", "7", "--f", "t^2 + 1"], 0);
}

#[test]
fn lattice() {
    let r = golden("lattice", &["lattice", "--name", "E8", "--norm", "2"], 0);
    assert_eq!(r["result"]["count"], 240);
}

#[test]
fn pillai() {
    golden("pillai", &["pillai"], 0);
}

#[test]
fn batch_mixed() {
    let m = manifest("mixed.json");
    let r = golden("batch_mixed", &["batch", &m], 0);
    assert_eq!(r["result"]["runs"], 4);
}

#[test]
fn batch_empty_passes() {
    let o = run(&["batch", &manifest("empty.json")]);
    assert_eq!(o.code, 0);
    assert_eq!(o.report["status"], "PASS");
}

#[test]
fn batch_with_sixth_power_errors() {
    let o = run(&["batch", &manifest("sixth_power.json")]);
    assert_eq!(o.code, 2);
    assert_eq!(o.report["result"]["errors"], 1);
    assert_eq!(o.report["result"]["passed"], 1);
}

#[test]
fn batch_rejects_bad_manifests() {
    for m in ["malformed.json", "nested.json", "missing.json"] {
        let o = run(&["batch", &manifest(m)]);
        assert_eq!(o.code, 2, "{m}");
        assert_eq!(o.report["status"], "ERROR");
    }
}

#[test]
fn sixth_power_is_an_error() {
    let o = run(&["classify", "--p", "7", "--f", "t^6"]);
    assert_eq!(o.code, 2);
    assert!(o.report["error"]["message"].is_string());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["classify", "--p", "7"]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["--threads", "0", "pillai"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify-corsh2", "--p", "7", "--f", "t^3 + 1"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let m = manifest("mixed.json");
    let one = run(&["--threads", "1", "batch", &m]);
    let four = run(&["--threads", "4", "batch", &m]);
    assert_eq!(one.report["result"], four.report["result"]);
}

#[test]
fn timings_only_on_request() {
    assert!(run(&["pillai"]).report.get("timingsMs").is_none());
    assert!(run(&["--timings", "pillai"]).report.get("timingsMs").is_some());
}
