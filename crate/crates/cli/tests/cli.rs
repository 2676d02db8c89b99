use std::fs;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tightnb"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn catalog_list_and_show() {
    let o = run(&["catalog", "list"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 12);
    let o = run(&["catalog", "show", "n12"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| !l.starts_with('#')).count(), 25);
    assert_eq!(run(&["catalog", "show", "N13"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    assert_eq!(run(&["verify", "N1", "--class", "kbar5"]).status.code(), Some(0));
    assert_eq!(run(&["verify", "N1", "--class", "k"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "N1", "--class", "nonsense"]).status.code(), Some(2));
}

#[test]
fn malformed_input_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.facets");
    fs::write(&path, "p q r\np s\n").unwrap();
    let o = run(&["invariants", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
}

#[test]
fn file_input_matches_catalog_id() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("n3.facets");
    fs::write(&path, stdout(&run(&["catalog", "show", "N3"]))).unwrap();
    let o = run(&["isomorphic", path.to_str().unwrap(), "N3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(run(&["isomorphic", "N1", "N2"]).status.code(), Some(1));
}

#[test]
fn invariants_json() {
    let o = run(&["invariants", "N1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.is_object());
    assert!(stdout(&o).contains("\"f_vector\""));
}

#[test]
fn boundary_written_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("b.facets");
    let o = run(&["boundary", "N4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 96);
}

#[test]
fn enumerate_writes_facets_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["enumerate", "--graph", "g45", "--out", dir.path().to_str().unwrap(), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let summary: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    let classes = summary["classes"].as_array().unwrap();
    assert_eq!(classes.len(), 3);
    for c in classes {
        let id = c["catalog"].as_str().unwrap();
        let written = fs::read_to_string(dir.path().join(format!("{id}.facets"))).unwrap();
        let reference = stdout(&run(&["catalog", "show", id]));
        assert_eq!(written, reference, "{id}");
    }
}

#[test]
fn enumerate_is_identical_across_job_counts() {
    let one = run(&["--jobs", "1", "enumerate", "--graph", "g36", "--json"]);
    let many = run(&["--jobs", "4", "enumerate", "--graph", "g36", "--json"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(run(&["--jobs", "0", "catalog", "list"]).status.code(), Some(2));
}

#[test]
fn graph_oracle_command() {
    let o = run(&["graphs", "classify", "--vertices", "7", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["classes"].as_array().unwrap().len(), 3);
    assert_eq!(v["matches_prediction"], true);
    let o = run(&["graphs", "classify", "--vertices", "10", "--mode", "exhaustive"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn automorphisms_and_minimal_form() {
    let o = run(&["aut", "N2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["order"], 3);
    let o = run(&["minimal", "N6"]);
    assert_eq!(o.status.code(), Some(0));
    let body: String = stdout(&o).lines().filter(|l| !l.starts_with('#')).map(|l| format!("{l}\n")).collect();
    assert_eq!(body, stdout(&run(&["catalog", "show", "N6"])));
}
