use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn scover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_scover")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn construct_to(dir: &Path, name: &str, args: &[&str]) -> String {
    let path = dir.join(name).to_string_lossy().into_owned();
    let mut full = vec!["construct"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", &path]);
    let out = scover(&full);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

#[test]
fn grid_round_trip_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), "grid.json", &["grid", "--t", "5", "--s", "4"]);
    let doc: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
    assert_eq!(doc["n"], 16);
    assert_eq!(doc["lines"].as_array().unwrap().len(), 8);

    let out = scover(&["verify", &path]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["linear"]["ok"], true);
    assert_eq!(r["covered"]["ok"], true);
    assert_eq!(r["cap"]["ok"], true);
}

#[test]
fn strict_cap_rejects_grid() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), "grid.json", &["grid", "--t", "3", "--s", "3"]);
    let out = scover(&["verify", &path, "--cap", "strict"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["cap"]["ok"], false);
}

#[test]
fn tight_families_verify() {
    let dir = tempfile::tempdir().unwrap();
    for (n, s) in [(11, 3), (13, 3), (17, 5), (31, 4)] {
        let path = construct_to(dir.path(), "t.json", &["tight", "--n", &n.to_string(), "--s", &s.to_string()]);
        let doc: Value = serde_json::from_slice(&std::fs::read(&path).unwrap()).unwrap();
        let m = doc["lines"].as_array().unwrap().len();
        assert_eq!(m, (n - 1) / (s - 1) + s - 1);
        assert_eq!(scover(&["verify", &path]).status.code(), Some(0), "({n},{s})");
    }
}

#[test]
fn uncovered_family_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"schema_version":1,"n":5,"s":3,"lines":[[0,1]],"metadata":{}}"#).unwrap();
    let path = path.to_string_lossy().into_owned();
    let out = scover(&["verify", &path]);
    assert_eq!(out.status.code(), Some(1));
    let r = json(&out);
    assert_eq!(r["covered"]["ok"], false);
    assert_eq!(r["covered"]["witness"].as_array().unwrap().len(), 3);
    assert_eq!(scover(&["lemmas", &path]).status.code(), Some(1));
}

#[test]
fn errors_exit_two() {
    assert_eq!(scover(&["construct", "plane", "--q", "4"]).status.code(), Some(2));
    assert_eq!(scover(&["construct", "tight", "--n", "12", "--s", "3"]).status.code(), Some(2));
    assert_eq!(scover(&["verify", "/nonexistent/family.json"]).status.code(), Some(2));
    assert_eq!(scover(&["bogus"]).status.code(), Some(2));
    assert_eq!(scover(&["search", "--n", "40", "--s", "3"]).status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, r#"{"schema_version":2,"n":3,"s":2,"lines":[],"metadata":{}}"#).unwrap();
    assert_eq!(scover(&["verify", &path.to_string_lossy()]).status.code(), Some(2));
}

#[test]
fn search_and_oracle_agree() {
    let out = scover(&["search", "--n", "5", "--s", "3", "--cap", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["m_star"], 4);
    assert_eq!(r["status"], "optimal");

    let out = scover(&["search", "--n", "5", "--s", "3", "--cap", "2", "--oracle"]);
    assert_eq!(json(&out)["m_star"], 4);
}

#[test]
fn bound_is_exact() {
    let r = json(&scover(&["bound", "--n", "8", "--s", "3"]));
    assert_eq!(r["cap"], 3);
    assert_eq!(r["bound"]["num"], 11);
    assert_eq!(r["bound"]["den"], 2);
}

#[test]
fn profile_and_lemmas_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = construct_to(dir.path(), "g.json", &["grid", "--t", "3", "--s", "3"]);
    let p = json(&scover(&["profile", &path]));
    assert_eq!(p["a1"], 3);
    let out = scover(&["lemmas", &path, "--pretty"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("part 4"));
    assert!(text.contains("residual 0"));
}
