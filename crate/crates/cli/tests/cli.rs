use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn intgraph(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_intgraph"))
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap()
}

fn json_out(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&o.stdout)))
}

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/corpus").join(name)
}

fn fixtures() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, body: &str| fs::write(dir.path().join(name), body).unwrap();
    write("f.json", r#"{"vertices":[1,2],"edges":[{"src":1,"tgt":2,"w":"1/2"},{"src":2,"tgt":2,"w":"1/2"}]}"#);
    write("loop.json", r#"{"vertices":[2,3],"edges":[{"src":2,"tgt":2,"w":"1/2"},{"src":2,"tgt":3,"w":"1/2"}]}"#);
    write("chain.json", r#"{"vertices":[2,3],"edges":[{"src":2,"tgt":3,"w":"1/3"}]}"#);
    write("a.json", r#"{"wager":0,"slices":[{"coeff":1,"graph":{"vertices":[1,2],"edges":[{"src":1,"tgt":2,"w":"1/2"}]}}]}"#);
    write("b.json", r#"{"wager":0,"slices":[{"coeff":1,"graph":{"vertices":[1,2],"edges":[{"src":2,"tgt":1,"w":"1/2"}]}}]}"#);
    write("c.json", r#"{"wager":2,"carrier":[5],"slices":[{"coeff":1,"graph":{"vertices":[5],"edges":[]}}]}"#);
    dir
}

#[test]
fn exec_chain() {
    let dir = fixtures();
    let o = intgraph(&["exec", "f.json", "chain.json", "--dot", "out.dot"], dir.path());
    assert!(o.status.success());
    let g = json_out(&o);
    assert_eq!(g["vertices"], serde_json::json!([1, 3]));
    assert_eq!(g["edges"][0]["w"], serde_json::json!({"num": 1, "den": 6}));
    assert!(fs::read_to_string(dir.path().join("out.dot")).unwrap().contains("1 -> 3"));
}

#[test]
fn divergent_exec_exits_3_and_names_the_cycle() {
    let dir = fixtures();
    let o = intgraph(&["exec", "f.json", "loop.json"], dir.path());
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2 -> 2"));
}

#[test]
fn aggregated_sums_the_geometric_series() {
    let dir = fixtures();
    let o = intgraph(&["exec", "f.json", "loop.json", "--aggregated", "--explain"], dir.path());
    assert!(o.status.success());
    let m = json_out(&o);
    assert_eq!(m["entries"][0][1], serde_json::json!([1, 3]));
    assert!(String::from_utf8_lossy(&o.stderr).contains("N:"));
}

#[test]
fn measure_under_each_parameter() {
    let dir = fixtures();
    let ld = json_out(&intgraph(&["measure", "f.json", "loop.json"], dir.path()));
    assert!((ld["approx"].as_f64().unwrap() - (4.0f64 / 3.0).ln()).abs() < 1e-12);
    let inf = json_out(&intgraph(&["measure", "f.json", "loop.json", "--measure", "inf"], dir.path()));
    assert_eq!(inf["value"], "inf");
    fs::write(dir.path().join("t.json"), r#"{"1/4": 7}"#).unwrap();
    let t = json_out(&intgraph(
        &["measure", "f.json", "loop.json", "--measure", "trunc:4", "--table", "t.json"],
        dir.path(),
    ));
    assert_eq!(t["display"], "7");
    assert_eq!(t["exact"], true);
}

#[test]
fn pairing_orthogonality_and_tensor() {
    let dir = fixtures();
    let p = json_out(&intgraph(&["pair", "a.json", "b.json"], dir.path()));
    assert!(p["display"].as_str().unwrap().contains("ln(3/4)"));
    assert_eq!(p["orthogonal"], true);
    assert!(intgraph(&["orth", "a.json", "b.json"], dir.path()).status.success());
    assert_eq!(intgraph(&["orth", "a.json", "b.json", "--measure", "inf"], dir.path()).status.code(), Some(1));
    let t = json_out(&intgraph(&["tensor", "a.json", "c.json"], dir.path()));
    assert_eq!(t["wager"], serde_json::json!({"num": 2, "den": 1}));
    assert_eq!(intgraph(&["tensor", "a.json", "b.json"], dir.path()).status.code(), Some(2));
}

#[test]
fn input_errors_exit_2() {
    let dir = fixtures();
    fs::write(dir.path().join("bad.json"), "{\"vertices\": [1,\n  oops]}").unwrap();
    let o = intgraph(&["measure", "bad.json", "f.json"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("2:"));
    assert_eq!(intgraph(&["measure", "f.json", "f.json", "--measure", "sqrt"], dir.path()).status.code(), Some(2));
    assert_eq!(intgraph(&["check", "nope"], dir.path()).status.code(), Some(2));
}

#[test]
fn check_is_deterministic() {
    let dir = fixtures();
    let run = || intgraph(&["check", "cyclic", "--trials", "40", "--seed", "7"], dir.path());
    let (a, b) = (run(), run());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(json_out(&a)["passed"], 40);
    for suite in ["adjunction", "nilpotency-agreement"] {
        assert!(intgraph(&["check", suite, "--trials", "20"], dir.path()).status.success());
    }
}

#[test]
fn interpret_axiom_is_a_fax() {
    let dir = fixtures();
    let o = intgraph(&["interpret", corpus("ax.proof").to_str().unwrap()], dir.path());
    assert!(o.status.success());
    let r = json_out(&o);
    assert_eq!(r["certified"], true);
    let slices = r["project"]["slices"].as_array().unwrap();
    assert_eq!(slices.len(), 1);
    let edges = slices[0]["graph"]["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 2);
    assert!(edges.iter().all(|e| e["w"] == serde_json::json!({"num": 1, "den": 1})));
}

#[test]
fn interpret_reduce_reports_equivalence() {
    let dir = fixtures();
    let o = intgraph(
        &["interpret", corpus("cut_tensor_par.proof").to_str().unwrap(), "--reduce"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let r = json_out(&o);
    assert_eq!(r["reduction"]["equiv"], true);
    assert_eq!(r["reduction"]["matches_expected"], true);
}

#[test]
fn interpret_figure1_and_strict_units() {
    let dir = fixtures();
    let o = intgraph(&["interpret", "--figure1"], dir.path());
    assert!(o.status.success());
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("slices(p)  = 2") && text.contains("p ~ p' = true"));
    let units = corpus("units.proof");
    assert!(intgraph(&["interpret", units.to_str().unwrap()], dir.path()).status.success());
    assert_eq!(
        intgraph(&["interpret", units.to_str().unwrap(), "--behaviours"], dir.path()).status.code(),
        Some(2)
    );
}

#[test]
fn export_dot() {
    let dir = fixtures();
    let o = intgraph(&["export-dot", "f.json", "--name", "F"], dir.path());
    assert!(String::from_utf8_lossy(&o.stdout).starts_with("digraph F {"));
}
