use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_complicial")).args(args).output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn load(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn shape_writes_the_square() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "cube.json");
    assert_eq!(code(&["shape", "cube", "--n", "2", "--out", &out]), 0);
    assert_eq!(load(Path::new(&out))["cells"].as_array().unwrap().len(), 11);
}

#[test]
fn shape_of_the_point_and_the_horn_cube() {
    let dir = TempDir::new().unwrap();
    let point = path(&dir, "p.json");
    assert_eq!(code(&["shape", "delta", "--n", "0", "--out", &point]), 0);
    assert_eq!(load(Path::new(&point))["cells"].as_array().unwrap().len(), 1);
    let h = path(&dir, "h.json");
    assert_eq!(code(&["shape", "bigH", "--n", "3", "--k", "2", "--out", &h]), 0);
}

#[test]
fn bad_shapes_and_flags_exit_2() {
    assert_eq!(code(&["shape", "nope", "--n", "1"]), 2);
    assert_eq!(code(&["shape", "horn", "--n", "2"]), 2);
    assert_eq!(code(&["check", "--mode", "sideways", "x.json"]), 2);
    assert_eq!(code(&["check", "/definitely/missing.json"]), 2);
    assert_eq!(code(&["frobnicate"]), 2);
}

#[test]
fn malformed_input_exits_2() {
    let dir = TempDir::new().unwrap();
    let bad = path(&dir, "bad.json");
    std::fs::write(&bad, "{\"cells\": 3}").unwrap();
    assert_eq!(code(&["check", &bad]), 2);
    assert_eq!(code(&["verify-cert", &bad]), 2);
}

#[test]
fn check_passes_on_a_point_and_fails_on_a_triangle() {
    let dir = TempDir::new().unwrap();
    let point = path(&dir, "p.json");
    let tri = path(&dir, "t.json");
    let report = path(&dir, "r.json");
    run(&["shape", "delta", "--n", "0", "--out", &point]);
    run(&["shape", "delta", "--n", "2", "--out", &tri]);
    assert_eq!(code(&["check", &point]), 0);
    assert_eq!(code(&["check", "--mode", "inner", &tri, "--out", &report]), 1);
    let r = load(Path::new(&report));
    assert_eq!(r["passed"], false);
    assert_eq!(r["report"]["failures"][0]["label"], "Λ¹[2] ↪ Δ¹[2]");
}

#[test]
fn nerve_of_a_suspended_point_is_an_arrow() {
    let dir = TempDir::new().unwrap();
    let e = path(&dir, "e.json");
    let n = path(&dir, "n.json");
    let arrow = path(&dir, "a.json");
    assert_eq!(code(&["example", "sigma-point", "--out", &e]), 0);
    assert_eq!(code(&["nerve", &e, "--dmax", "3", "--out", &n]), 0);
    run(&["shape", "delta", "--n", "1", "--out", &arrow]);
    let (got, want) = (load(Path::new(&n)), load(Path::new(&arrow)));
    let shape = |v: &Value| {
        v["cells"].as_array().unwrap().iter().map(|c| (c["dim"].clone(), c["thin"].clone())).collect::<Vec<_>>()
    };
    assert_eq!(shape(&got), shape(&want));
}

#[test]
fn nerve_of_the_suspended_iso_passes_the_inner_check() {
    let dir = TempDir::new().unwrap();
    let e = path(&dir, "e.json");
    let n = path(&dir, "n.json");
    run(&["example", "sigma-iso", "--out", &e]);
    assert_eq!(code(&["nerve", &e, "--out", &n]), 0);
    assert_eq!(code(&["check", "--mode", "inner", "--dmax", "3", &n]), 0);
}

#[test]
fn certificates_verify_and_tampering_is_caught() {
    let dir = TempDir::new().unwrap();
    let cert = path(&dir, "h23.json");
    assert_eq!(code(&["export-cert", "H23", "--out", &cert]), 0);
    assert_eq!(code(&["verify-cert", &cert]), 0);
    let mut j = load(Path::new(&cert));
    j["steps"].as_array_mut().unwrap().pop();
    std::fs::write(&cert, j.to_string()).unwrap();
    let out = run(&["verify-cert", &cert]);
    assert_eq!(out.status.code(), Some(1));
    let report: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["passed"], false);
}

#[test]
fn search_rederives_the_square_tower() {
    let dir = TempDir::new().unwrap();
    let found = path(&dir, "found.json");
    assert_eq!(code(&["search-tower", "--n", "2", "--k", "1", "--budget", "10", "--out", &found]), 0);
    assert_eq!(load(Path::new(&found))["steps"].as_array().unwrap().len(), 2);
    assert_eq!(code(&["verify-cert", &found]), 0);
    assert_eq!(code(&["search-tower", "--n", "2", "--k", "1", "--budget", "1"]), 1);
    assert_eq!(code(&["search-tower", "--n", "2"]), 2);
}

#[test]
fn paper_suite_passes_and_is_byte_stable() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (path(&dir, "a"), path(&dir, "b"));
    assert_eq!(code(&["paper-suite", "--seed", "7", "--out", &a]), 0);
    assert_eq!(code(&["paper-suite", "--seed", "7", "--out", &b]), 0);
    let read = |d: &str| std::fs::read(Path::new(d).join("summary.json")).unwrap();
    assert_eq!(read(&a), read(&b));
    let summary = load(&Path::new(&a).join("summary.json"));
    assert_eq!(summary["passed"], true);
    assert_eq!(summary["items"].as_array().unwrap().len(), 9);
}
