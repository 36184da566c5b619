use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn permrat(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permrat"))
        .args(args)
        .env("PERMRAT_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn derive_writes_files_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = permrat(dir.path(), &["derive", "--n", "3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let g = v["files"].as_array().unwrap().iter().find(|f| f["file"] == "n3_G.poly").unwrap();
    assert_eq!(g["block_degree"], 18);
    for f in ["n3_P.poly", "n3_Q.poly", "n3_G.poly", "manifest.json"] {
        assert!(dir.path().join(f).exists(), "{f} missing");
    }
}

#[test]
fn usage_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&permrat(dir.path(), &["derive", "--n", "5"])), 2);
    assert_eq!(code(&permrat(dir.path(), &["frobnicate"])), 2);
    assert_eq!(code(&permrat(dir.path(), &["witness", "--p", "5", "--n", "3", "--b", "1,2"])), 2);
    assert_eq!(code(&permrat(dir.path(), &["permtest", "--p", "6", "--n", "2", "--all-b"])), 2);
    let bad = dir.path().join("bad.poly");
    std::fs::write(&bad, "vars: Y1 Y2\n3 1\n").unwrap();
    assert_eq!(code(&permrat(dir.path(), &["count", "--p", "7", "--poly", bad.to_str().unwrap()])), 2);
}

#[test]
fn verify_n3_passes_and_records_hashes() {
    let dir = tempfile::tempdir().unwrap();
    let out = permrat(dir.path(), &["verify", "--n", "3", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["seed"], 7);
    assert_eq!(v["schema"], 1);
    assert!(v["cache_hashes"]["n3_G.poly"].is_string());
}

#[test]
fn verify_n4_exit_code_follows_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let out = permrat(dir.path(), &["verify", "--n", "4"]);
    let v = json(&out);
    assert_eq!(code(&out) == 0, v["verdict"] == "pass");
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["status"] == "fail")
        .map(|c| c["check_id"].as_str().unwrap())
        .collect();
    assert_eq!(code(&out) == 0, failed.is_empty(), "{failed:?}");
}

#[test]
fn randomized_suites_pass() {
    let dir = tempfile::tempdir().unwrap();
    let out = permrat(dir.path(), &["verify", "--lemma21", "5", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["verdict"], "pass");
    let out = permrat(dir.path(), &["verify", "--diff", "7", "3", "1,0,0", "--trials", "50"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn corrupt_cache_fails_unless_refreshed() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&permrat(dir.path(), &["derive", "--n", "3"])), 0);
    let g = dir.path().join("n3_G.poly");
    let mut body = std::fs::read_to_string(&g).unwrap();
    body.push_str("1 0 0 0 0\n");
    std::fs::write(&g, body).unwrap();
    let out = permrat(dir.path(), &["verify", "--n", "3"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stderr).contains("corrupt"));
    assert_eq!(code(&permrat(dir.path(), &["verify", "--n", "3", "--refresh"])), 0);
    assert_eq!(code(&permrat(dir.path(), &["verify", "--n", "3"])), 0);
}

#[test]
fn permtest_classifies_by_trace() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&permrat(dir.path(), &["permtest", "--p", "5", "--n", "2", "--all-b"]));
    assert_eq!(v["permutation_traces"], serde_json::json!([1, 4]));
    let v = json(&permrat(dir.path(), &["permtest", "--p", "2", "--n", "6", "--all-b"]));
    assert_eq!(v["permutation_traces"], serde_json::json!([1]));
    let v = json(&permrat(dir.path(), &["permtest", "--p", "7", "--n", "3", "--all-b"]));
    assert_eq!(v["permutation_traces"], serde_json::json!([]));
    assert_eq!(v["classification"]["exhaustive"], true);
}

#[test]
fn budget_exceeded_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = permrat(dir.path(), &["permtest", "--p", "7", "--n", "3", "--b", "1,0,0", "--budget", "100"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn variety_witness_is_valid() {
    let dir = tempfile::tempdir().unwrap();
    let out = permrat(dir.path(), &["witness", "--p", "11", "--n", "3", "--b", "1,0,0", "--method", "variety"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["witness"]["valid"], true);
    assert_eq!(v["witness"]["method"], "variety");
    assert_eq!(v["modulus"].as_array().unwrap().len(), 4);
}

#[test]
fn witness_on_permutation_is_not_found() {
    let dir = tempfile::tempdir().unwrap();
    let out = permrat(dir.path(), &["witness", "--p", "5", "--n", "2", "--b", "3,0"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["result"], "not_found");
}

#[test]
fn n4_variety_off_half_falls_back_to_brute() {
    let dir = tempfile::tempdir().unwrap();
    let out = permrat(dir.path(), &["witness", "--p", "5", "--n", "4", "--b", "1,0,0,0", "--method", "variety"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["witness"]["method"], "brute");
    assert_eq!(v["notices"].as_array().unwrap().len(), 1);
}

#[test]
fn count_checks_intersection_bound() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&permrat(dir.path(), &["derive", "--n", "3"])), 0);
    let g = dir.path().join("n3_G.poly");
    let q = dir.path().join("n3_Q.poly");
    let out = permrat(
        dir.path(),
        &["count", "--p", "7", "--poly", g.to_str().unwrap(), "--with", q.to_str().unwrap(), "--moore"],
    );
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["records"][1]["bound"], 18 * 18 * 7);
    assert_eq!(v["within_bounds"], true);
    assert_eq!(v["moore"]["cyclic"], true);
}

#[test]
fn threshold_reports_prime_and_index() {
    let dir = tempfile::tempdir().unwrap();
    let v = json(&permrat(dir.path(), &["threshold", "--n", "3"]));
    assert_eq!(v["threshold"]["prime"], 1734097);
    assert_eq!(v["prime_index"], 130492);
}
