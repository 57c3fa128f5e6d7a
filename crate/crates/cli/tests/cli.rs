use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gordonlab"))
        .args(args)
        .env_remove("GORDONLAB_CACHE")
        .output()
        .expect("binary runs")
}

fn run_env(args: &[&str], cache: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gordonlab"))
        .args(args)
        .env("GORDONLAB_CACHE", cache)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

#[test]
fn enumerate_examples() {
    let o = run(&["enumerate", "--n", "5", "--class", "neighborly", "--r", "3", "--i", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "2+2+1\n2+1+1+1\ncount: 2\n");

    let o = run(&["enumerate", "--n", "0", "--class", "all"]);
    assert_eq!(stdout(&o), "()\ncount: 1\n");

    let o = run(&["enumerate", "--n", "7", "--class", "distinct-r", "--r", "3", "--i", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], 2);
    assert_eq!(v["partitions"], serde_json::json!([[7], [4, 3]]));
    assert_eq!(v["interp"], "induced");
}

#[test]
fn enumerate_csv_has_header() {
    let o = run(&["enumerate", "--n", "7", "--class", "distinct-r", "--r", "3", "--i", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,partition\n7,7\n7,\"4,3\"\n");
}

#[test]
fn signature_examples() {
    let o = run(&["signature", "--partition", "2,2,1,1,1", "--r", "3", "--i", "3", "--method", "both"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).ends_with("agree: yes\ndelta: 0\n"));

    let o = run(&["signature", "--partition", "3,2,2", "--r", "3", "--i", "3", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["value"], -1);
    assert_eq!(v["partition"], serde_json::json!([3, 2, 2]));

    let o = run(&["signature", "--partition", "", "--r", "3", "--i", "3"]);
    assert!(stdout(&o).ends_with("delta: 1\n"));
}

#[test]
fn signature_exit_codes() {
    assert_eq!(code(&run(&["signature", "--partition", "2,x", "--r", "3", "--i", "3"])), 2);
    assert_eq!(code(&run(&["signature", "--partition", "1,2", "--r", "3", "--i", "3"])), 2);
    assert_eq!(code(&run(&["signature", "--partition", "5,3", "--r", "3", "--i", "3"])), 3);
    // four ones exceed the multiplicity bound
    assert_eq!(code(&run(&["signature", "--partition", "1,1,1,1", "--r", "3", "--i", "3"])), 3);
    assert_eq!(code(&run(&["signature", "--partition", "2,1", "--r", "2", "--i", "3"])), 2);
    assert_eq!(code(&run(&["signature", "--partition", "2,1", "--method", "nope"])), 2);
}

#[test]
fn series_examples() {
    let o = run(&["series", "--which", "product", "--r", "3", "--i", "3", "--trunc", "7"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["trunc"], 7);
    assert_eq!(v["coeffs"].as_array().unwrap().last().unwrap(), 0);

    let o = run(&["series", "--which", "neighborly-signed", "--trunc", "0"]);
    assert_eq!(stdout(&o), "{\"trunc\":0,\"coeffs\":[1]}\n");

    let o = run(&["series", "--which", "gordon-b", "--r", "2", "--i", "2", "--trunc", "5", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,coefficient\n0,1\n1,1\n2,1\n3,1\n4,2\n5,2\n");
}

#[test]
fn series_json_round_trips() {
    let o = run(&["series", "--which", "hp-p", "--r", "3", "--i", "2", "--trunc", "12"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    let s: gordonlab_core::TruncatedSeries = serde_json::from_str(&text).unwrap();
    assert_eq!(s.trunc(), 12);
    assert_eq!(serde_json::to_string(&s).unwrap() + "\n", text);
}

#[test]
fn hypergraph_paoh_and_json() {
    let o = run(&["hypergraph", "--partition", "2,1,1,1", "--r", "3", "--i", "3"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|row| row.split_whitespace().count() == 3));

    let o = run(&["hypergraph", "--infinite", "--max-level", "3", "--r", "2", "--i", "1", "--format", "json"]);
    let h: gordonlab_core::Hypergraph = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(h.num_vertices(), 5);

    assert_eq!(code(&run(&["hypergraph", "--infinite", "--r", "2"])), 2);
    assert_eq!(code(&run(&["hypergraph", "--r", "2"])), 2);
}

#[test]
fn verify_examples_pass() {
    for args in [
        &["verify", "--identity", "main", "--r", "3", "--i", "3", "--trunc", "20"][..],
        &["verify", "--identity", "main", "--r", "2", "--i", "1", "--trunc", "0"],
        &["verify", "--identity", "gordon", "--r", "2", "--i", "2", "--trunc", "40"],
        &["verify", "--identity", "andrews-gordon", "--r", "3", "--i", "2", "--trunc", "30"],
        &["verify", "--identity", "polarization", "--r", "3", "--i", "2", "--trunc", "12"],
        &["verify", "--identity", "dp-vs-brute", "--r", "3", "--i", "1", "--trunc", "12", "--interp", "definition"],
        &["verify", "--identity", "hilbert-prop", "--trunc", "8", "--trials", "10", "--seed", "7"],
    ] {
        let o = run(args);
        assert_eq!(code(&o), 0, "{args:?}");
        assert!(stdout(&o).ends_with("PASS\n"), "{args:?}");
    }
}

#[test]
fn verify_json_report_round_trips() {
    let o = run(&["verify", "--identity", "main", "--r", "3", "--i", "2", "--trunc", "15", "--format", "json"]);
    let report: gordonlab_core::VerificationReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report.pass);
    assert_eq!(report.rows.len(), 16);
    assert!(report.rows.iter().enumerate().all(|(n, row)| row.n == n && row.equal));
    assert_eq!(report.params.interp, gordonlab_core::Interpretation::InducedNoIsolated);
    assert_eq!(report.elapsed_ms, None);
}

#[test]
fn verify_bad_flags_exit_two() {
    assert_eq!(code(&run(&["verify", "--identity", "main", "--r", "1", "--i", "3", "--trunc", "3"])), 2);
    assert_eq!(code(&run(&["verify", "--identity", "bogus", "--trunc", "3"])), 2);
    assert_eq!(code(&run(&["verify", "--identity", "main"])), 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["enumerate", "--n", "12", "--class", "neighborly", "--r", "3", "--i", "2", "--format", "json"][..],
        &["series", "--which", "neighborly-signed", "--r", "4", "--i", "2", "--trunc", "30"],
        &["verify", "--identity", "dp-vs-brute", "--r", "3", "--i", "3", "--trunc", "12", "--format", "json"],
        &["verify", "--identity", "hilbert-prop", "--trunc", "8", "--trials", "15"],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn cache_hits_match_fresh_computation() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["series", "--which", "neighborly-signed", "--r", "3", "--i", "1", "--trunc", "25"];
    let fresh = run(&args);
    let first = run_env(&args, dir.path());
    let second = run_env(&args, dir.path());
    assert_eq!(fresh.stdout, first.stdout);
    assert_eq!(fresh.stdout, second.stdout);
    let entries: Vec<_> = std::fs::read_dir(dir.path()).unwrap().collect();
    assert_eq!(entries.len(), 1);

    let via_flag = run(&["--cache-dir", dir.path().to_str().unwrap(), "series", "--which", "product", "--trunc", "5"]);
    assert_eq!(code(&via_flag), 0);
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

fn plant_entry(dir: &Path, which: &str, r: usize, i: usize, coeffs: &[i64]) {
    let trunc = coeffs.len() - 1;
    let raw = format!("{{\"trunc\":{trunc},\"coeffs\":{}}}", serde_json::to_string(coeffs).unwrap());
    let sha = hex::encode(Sha256::digest(raw.as_bytes()));
    let series: Value = serde_json::from_str(&raw).unwrap();
    let entry = serde_json::json!({
        "key": { "which": which, "r": r, "i": i, "trunc": coeffs.len() - 1, "interp": "induced" },
        "sha256": sha,
        "series": series,
    });
    let name = format!("{which}-r{r}-i{i}-n{}-induced.json", coeffs.len() - 1);
    std::fs::write(dir.join(name), serde_json::to_string(&entry).unwrap()).unwrap();
}

#[test]
fn failing_identity_exits_one_without_pass() {
    let dir = tempfile::tempdir().unwrap();
    // a checksummed but wrong product side
    plant_entry(dir.path(), "product", 2, 2, &[1, 0, 0, 5, 0]);
    let o = run_env(&["verify", "--identity", "main", "--r", "2", "--i", "2", "--trunc", "4"], dir.path());
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.ends_with("FAIL\n"));
    assert!(!out.contains("PASS"));
    assert!(out.contains("first failing coefficient: q^2"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("q^2"));

    let o = run_env(&["verify", "--identity", "main", "--r", "2", "--i", "2", "--trunc", "4", "--format", "json"], dir.path());
    assert_eq!(code(&o), 1);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], false);
    assert_eq!(v["first_failure"], 2);
}

#[test]
fn tampered_cache_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["series", "--which", "product", "--r", "2", "--i", "2", "--trunc", "4"];
    let good = run_env(&args, dir.path());
    let path = dir.path().join("product-r2-i2-n4-induced.json");
    let text = std::fs::read_to_string(&path).unwrap();
    let mut entry: Value = serde_json::from_str(&text).unwrap();
    entry["series"]["coeffs"][1] = serde_json::json!(9);
    std::fs::write(&path, entry.to_string()).unwrap();

    let again = run_env(&args, dir.path());
    assert_eq!(code(&again), 0);
    assert_eq!(good.stdout, again.stdout);
    assert!(String::from_utf8_lossy(&again.stderr).contains("checksum"));
}

#[test]
fn timing_is_opt_in() {
    let o = run(&["--timing", "verify", "--identity", "main", "--r", "2", "--i", "2", "--trunc", "5", "--format", "json"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v.get("elapsed_ms").is_some());
}
