use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn primecf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_primecf"))
        .args(args)
        .env_remove("PRIMECF_SIEVE_LIMIT")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = primecf(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut v = args.to_vec();
    v.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&v)).unwrap()
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{name}.schema.json"));
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&raw).unwrap()
}

fn check(name: &str, args: &[&str]) -> Value {
    let doc = json(args);
    let compiled = schema(name);
    if let Err(errors) = compiled.validate(&doc) {
        let msgs: Vec<String> = errors.map(|e| format!("{} at {}", e, e.instance_path)).collect();
        panic!("{args:?} does not match {name}: {msgs:#?}");
    }
    assert_eq!(doc["schema"], format!("primecf/{name}/v1"));
    doc
}

#[test]
fn every_command_matches_its_schema() {
    let sieve = ["--sieve-limit", "1e6"];
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("pzeta-tail", vec!["pzeta-tail", "--s", "2", "--m", "2", "--cutoff", "1e5", "--oracle"]),
        ("pzeta-tail", vec!["pzeta-tail", "--ell", "2", "--s", "1.5", "--m", "100", "--cutoff", "1e5", "--mode", "at-most"]),
        ("pzeta-asymptotic", vec!["pzeta-asymptotic", "--ell", "2", "--s", "2", "--grid", "1e3,1e4", "--cutoff", "1e5"]),
        ("cf-expand", vec!["cf-expand", "--rational", "113/355"]),
        ("cf-expand", vec!["cf-expand", "--real", "0.41421356237309504880", "--bits", "60"]),
        ("interval-measure", vec!["interval-measure", "--word", "[1,2,3]"]),
        ("interval-measure", vec!["interval-measure", "--word", "[2]", "--from", "3", "--to", "9"]),
        ("interval-measure", vec!["interval-measure", "--threshold", "50", "--ell", "2", "--cutoff", "2e4"]),
        ("pressure-dim", vec!["pressure-dim", "--ell", "2", "--b", "3", "--m", "6", "--n", "3"]),
        ("hwx-dim", vec!["hwx-dim", "--phi", "pow:3", "--m", "5", "--n", "2"]),
        ("hwx-dim", vec!["hwx-dim", "--phi", "exp:2", "--m", "8", "--n", "3"]),
        ("hwx-dim", vec!["hwx-dim", "--phi", "dexp:3,2", "--window", "5,20"]),
        ("mc-zero-one", vec!["mc-zero-one", "--phi", "exp:2", "--window", "3,8", "--samples", "50", "--union-cutoff", "1e4"]),
        ("mc-zero-one", vec!["mc-zero-one", "--phi", "const:5", "--window", "1,4", "--samples", "50", "--per-n"]),
        ("bb-series", vec!["bb-series", "--phi", "pow:2", "--window", "1,6", "--series", "q-indexed", "--ell", "2"]),
        ("luczak-dim", vec!["luczak-dim", "--b", "2", "--c", "1.5", "--kmax", "6"]),
        ("eb-build", vec!["eb-build", "--b", "4", "--s", "0.55", "--delta", "0.02"]),
        ("eb-build-checks", vec!["eb-build", "--b", "4", "--s", "0.55", "--delta", "0.02", "--emit", "checks"]),
        ("eb-build-nodes", vec!["eb-build", "--b", "4", "--s", "0.55", "--delta", "0.02", "--emit", "nodes"]),
        ("box-dim", vec!["box-dim", "--source", "toy", "--levels", "5"]),
        ("box-dim", vec!["box-dim", "--source", "luczak"]),
    ];
    for (name, mut args) in cases {
        args.extend(sieve);
        check(name, &args);
    }
}

#[test]
fn asymptotic_grid_gives_one_row_per_m() {
    let out = stdout(&["pzeta-asymptotic", "--ell", "1", "--s", "2", "--grid", "1e3,1e4,1e5,1e6"]);
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    let headers = rdr.headers().unwrap().clone();
    let m_col = headers.iter().position(|h| h == "m").unwrap();
    let ratio_col = headers.iter().position(|h| h == "ratio").unwrap();
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    let ms: Vec<&str> = rows.iter().map(|r| &r[m_col]).collect();
    assert_eq!(ms, ["1000", "10000", "100000", "1000000"]);
    for r in &rows {
        let ratio: f64 = r[ratio_col].parse().unwrap();
        assert!((0.7..=1.5).contains(&ratio), "{ratio}");
        assert_eq!(r[ratio_col].split('e').next().unwrap().replace(['.', '-'], "").len(), 20);
    }
}

#[test]
fn rational_expansion() {
    let doc = json(&["cf-expand", "--rational", "113/355"]);
    assert_eq!(doc["rows"][0]["digits"], "[3,7,16]");
    assert_eq!(doc["rows"][0]["convergent"], "113/355");
}

#[test]
fn luczak_ratio_near_one_third() {
    let doc = json(&["luczak-dim", "--b", "2", "--c", "2", "--kmax", "20"]);
    let rows = doc["rows"].as_array().unwrap();
    let last = rows.last().unwrap();
    assert_eq!(last["k"], 20);
    assert!((last["ratio"].as_f64().unwrap() - 1.0 / 3.0).abs() < 0.01);
    assert_eq!(last["limit_exact"], "1/3");
}

#[test]
fn records_feed_box_dimension() {
    let dir = std::env::temp_dir().join(format!("primecf-records-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("tree.tsv");
    let path = file.to_str().unwrap();
    stdout(&["eb-build", "--b", "4", "--s", "0.55", "--delta", "0.02", "--records-out", path, "--sieve-limit", "1e6"]);
    let doc = check("box-dim", &["box-dim", "--source", "records", "--file", path, "--sieve-limit", "1e6"]);
    assert_eq!(doc["rows"][0]["fitted_levels"], 3);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn inputs_are_echoed() {
    let doc = json(&["pressure-dim", "--b", "5", "--m", "4", "--n", "3", "--seed", "9"]);
    let inputs = &doc["inputs"];
    assert_eq!(inputs["b"], 5.0);
    assert_eq!(inputs["m"], 4);
    assert_eq!(inputs["n"], 3);
    assert_eq!(inputs["seed"], 9);
    assert_eq!(inputs["sieve_limit"], 10_000_000);
}

#[test]
fn sieve_limit_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_primecf"))
        .args(["pzeta-tail", "--s", "2", "--m", "2", "--format", "json"])
        .env("PRIMECF_SIEVE_LIMIT", "5e4")
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["inputs"]["sieve_limit"], 50_000);
    assert_eq!(doc["inputs"]["cutoff"], 50_000);
}

#[test]
fn unknown_command_prints_usage() {
    let out = primecf(&["no-such-command"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("Usage"), "{err}");
}

#[test]
fn guard_violation_names_the_guard() {
    let out = primecf(&["pressure-dim", "--b", "4", "--m", "64", "--n", "8", "--guard", "1000"]);
    assert!(!out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("guard `enumeration` exceeded"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn domain_errors_exit_nonzero() {
    for args in [
        vec!["pzeta-tail", "--s", "1", "--m", "2", "--cutoff", "100"],
        vec!["pzeta-tail", "--s", "2", "--m", "2", "--cutoff", "1e9", "--sieve-limit", "1e5"],
        vec!["cf-expand", "--rational", "7/3"],
        vec!["eb-build", "--b", "4", "--s", "0.55", "--delta", "0.02", "--enforce"],
        vec!["mc-zero-one", "--phi", "exp:2", "--window", "5,3", "--samples", "10"],
    ] {
        let out = primecf(&args);
        assert!(!out.status.success(), "{args:?} succeeded");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn monte_carlo_depends_only_on_seed() {
    let base = ["mc-zero-one", "--phi", "nlogn", "--window", "5,30", "--samples", "200", "--sieve-limit", "1e5"];
    let run = |seed: &str| {
        let mut a = base.to_vec();
        a.extend(["--seed", seed, "--per-n"]);
        stdout(&a)
    };
    assert_eq!(run("3"), run("3"));
    assert_ne!(run("3"), run("4"));
}
