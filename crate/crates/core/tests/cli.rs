//! Golden tests for the command-line interface.
//!
//! Run with `KOPEL_BLESS=1` to rewrite the files under `tests/golden/`.

use std::path::PathBuf;
use std::process::Command;

use kopel::cli::{run, EXIT_NO, EXIT_OK, EXIT_UNDECIDED, EXIT_USAGE, MAX_DEPTH_ENV};
use serde_json::Value;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn kopel(args: &[&str]) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let mut argv = vec!["kopel", "--jobs", "2"];
    argv.extend_from_slice(args);
    let code = run(argv, &mut out, &mut err);
    Outcome { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn golden(name: &str, actual: &str) {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("KOPEL_BLESS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, actual).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(actual, want, "output differs from {name}");
}

fn json(s: &str) -> Value {
    serde_json::from_str(s).expect("stdout is JSON")
}

#[test]
fn equilibria_schema() {
    let o = kopel(&["equilibria", "--mu1", "4", "--mu2", "4"]);
    assert_eq!(o.code, EXIT_OK);
    golden("equilibria_4_4.json", &o.stdout);
    let v = json(&o.stdout);
    assert_eq!(v["positive_count"], 3);

    let o = kopel(&["equilibria", "--mu1", "3", "--mu2", "3"]);
    golden("equilibria_3_3.json", &o.stdout);
    let v = json(&o.stdout);
    assert_eq!(v["equilibria"][0]["multiplicity"], 3);
    assert_eq!(v["equilibria"][0]["exact"][0], "2/3");
}

#[test]
fn stability_schema() {
    let o = kopel(&["stability", "--mu1", "13/4", "--mu2", "13/4"]);
    assert_eq!(o.code, EXIT_OK);
    golden("stability_13_4.json", &o.stdout);
    let v = json(&o.stdout);
    assert_eq!(v["stable_count"], 2);

    let o = kopel(&["stability", "--table"]);
    assert_eq!(o.code, EXIT_OK);
    golden("stability_table.json", &o.stdout);
    assert_eq!(json(&o.stdout)["all_match"], true);
}

#[test]
fn scan_csv() {
    let o = kopel(&["scan", "--mu1", "1:5:3", "--mu2", "2:4:2", "--rho", "1/2"]);
    assert_eq!(o.code, EXIT_OK);
    golden("scan_rho.csv", &o.stdout);
    assert_eq!(o.stdout.lines().count(), 7);

    let o = kopel(&["scan", "--mu1", "4", "--mu2", "3:4:2", "--classifiers", "R1,A1"]);
    golden("scan_subset.csv", &o.stdout);
    assert!(o.stdout.starts_with("mu1,mu2,eq_count,stable_count,sign_R1,sign_A1,"));

    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("scan.csv");
    let o = kopel(&["scan", "--mu1", "1:5:3", "--mu2", "2:4:2", "--rho", "1/2", "--out", p.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(std::fs::read_to_string(&p).unwrap(), std::fs::read_to_string(golden_path("scan_rho.csv")).unwrap());
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

#[test]
fn repeller_schema_and_codes() {
    let o = kopel(&["repeller", "--rho", "5/32", "--mu", "59"]);
    assert_eq!(o.code, EXIT_OK);
    golden("repeller_5_32_59.json", &o.stdout);

    let o = kopel(&["repeller", "--rho", "1", "--mu", "1/2"]);
    assert_eq!(o.code, EXIT_NO);
    assert_eq!(json(&o.stdout)["verdict"], false);

    // not a fixed point
    let o = kopel(&["repeller", "--rho", "1", "--mu", "2", "--x", "1/3", "--y", "0"]);
    assert_eq!(o.code, EXIT_USAGE);
    assert!(!o.stderr.is_empty());
}

#[test]
fn snapback_verdicts_and_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("cert.json");
    let o = kopel(&[
        "snapback", "--rho", "5/32", "--mu", "59", "--radius", "1/5", "--emit-certificate", cert.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    golden("snapback_5_32_59.json", &o.stdout);
    let full = json(&std::fs::read_to_string(&cert).unwrap());
    for key in ["params", "target", "m", "radius", "repeller", "candidates", "candidates_in_ball", "disk", "attempts", "verdict"] {
        assert!(full.get(key).is_some(), "certificate lacks {key}");
    }
    assert_eq!(full["verdict"], "YES");
    assert_eq!(full["candidates_in_ball"].as_array().unwrap().len(), 3);

    let o = kopel(&["snapback", "--rho", "175/256", "--mu", "2"]);
    assert_eq!(o.code, EXIT_NO);
    golden("snapback_175_256_2.json", &o.stdout);

    let o = kopel(&["snapback", "--rho", "1", "--mu", "1/2"]);
    assert_eq!(o.code, EXIT_NO);
    assert_eq!(json(&o.stdout)["candidate_count"], 0);

    let o = kopel(&["snapback", "--rho", "5/32", "--mu", "59", "--radius", "1/5", "--max-depth", "1"]);
    assert_eq!(o.code, EXIT_UNDECIDED);
    assert_eq!(json(&o.stdout)["verdict"], "UNDECIDED");
}

#[test]
fn depth_cap_from_environment() {
    let run_with = |depth: &str, extra: &[&str]| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_kopel"));
        cmd.args(["snapback", "--rho", "5/32", "--mu", "59", "--radius", "1/5"]).args(extra);
        cmd.env(MAX_DEPTH_ENV, depth).output().unwrap()
    };
    let o = run_with("1", &[]);
    assert_eq!(o.status.code(), Some(EXIT_UNDECIDED));
    // the flag wins over the environment
    let o = run_with("1", &["--max-depth", "40"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let o = run_with("deep", &[]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}

#[test]
fn simulate_outputs() {
    let o = kopel(&["simulate", "--rho", "5/32", "--mu", "59", "--n", "4", "--digits", "9"]);
    assert_eq!(o.code, EXIT_OK);
    golden("simulate_exact.json", &o.stdout);
    let v = json(&o.stdout);
    assert_eq!(v["points"].as_array().unwrap().len(), 5);

    let o = kopel(&["simulate", "--mu", "2", "--rho", "175/256", "--n", "3", "--mode", "bigfloat", "--precision", "64"]);
    assert_eq!(o.code, EXIT_OK);
    golden("simulate_bigfloat.json", &o.stdout);

    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("traj.csv");
    let o = kopel(&[
        "simulate", "--rho", "5/32", "--mu", "59", "--n", "3", "--exact-columns", "--out", p.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_OK);
    golden("simulate_exact.csv", &std::fs::read_to_string(&p).unwrap());
}

#[test]
fn portrait_csv() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("portrait.csv");
    let o = kopel(&[
        "portrait", "--mu", "2", "--rho", "175/256", "--n", "12", "--skip", "8", "--mode", "bigfloat", "--digits",
        "12", "--out", p.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_OK);
    let v = json(&o.stdout);
    assert_eq!(v["rows"], 5);
    golden("portrait.csv", &std::fs::read_to_string(&p).unwrap());
}

#[test]
fn identities_report() {
    let o = kopel(&["identities"]);
    assert_eq!(o.code, EXIT_OK);
    golden("identities.json", &o.stdout);
}

#[test]
fn usage_errors() {
    for args in [
        vec!["frobnicate"],
        vec!["equilibria", "--mu1", "abc", "--mu2", "1"],
        vec!["snapback", "--rho", "1/2", "--mu", "3", "--m", "4"],
        vec!["portrait", "--mu", "2", "--rho", "1/2"],
        vec!["simulate", "--mu", "2", "--mu1", "3"],
        vec!["simulate", "--mu", "2", "--rho", "1/2", "--precision", "1", "--mode", "bigfloat"],
        vec!["stability"],
    ] {
        let o = kopel(&args);
        assert_eq!(o.code, EXIT_USAGE, "{args:?}: {}", o.stderr);
        assert!(o.stdout.is_empty(), "{args:?} wrote to stdout");
        assert!(!o.stderr.is_empty(), "{args:?} gave no message");
    }
    let o = kopel(&["--help"]);
    assert_eq!(o.code, EXIT_OK);
}
