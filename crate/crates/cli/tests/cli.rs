use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_steenrod"))
        .args(args)
        .env_remove("STEENROD_PRODUCT_LIMIT")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const RP2: &str = r#"{"builtin": "bar_skeleton", "q": 2, "dim": 2}"#;

#[test]
fn cohomology_of_projective_plane() {
    let dir = TempDir::new().unwrap();
    let space = write(dir.path(), "rp2.json", RP2);
    let out = run(&["cohomology", "--space", space.to_str().unwrap(), "--prime", "2", "--n-max", "2", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["space"]["betti"], serde_json::json!([1, 1, 1]));
    assert_eq!(report["space"]["simplices"], serde_json::json!([1, 1, 1]));
}

#[test]
fn both_methods_agree_and_report_squares() {
    let dir = TempDir::new().unwrap();
    let space = write(dir.path(), "rp2.json", RP2);
    let out = run(&["steenrod", "--space", space.to_str().unwrap(), "--method", "both", "--class", "1:0", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], true);
    let ops = report["operations"].as_array().unwrap();
    assert_eq!(ops.len(), 2);
    assert_eq!(ops[1]["operation"], "Sq^1");
    assert_eq!(ops[1]["diagonal"], serde_json::json!([1]));
    assert_eq!(ops[1]["agree"], true);
}

#[test]
fn odd_prime_table_renders_operation_names() {
    let dir = TempDir::new().unwrap();
    let space = write(dir.path(), "l.json", r#"{"builtin": "bar_skeleton", "q": 3, "dim": 3}"#);
    let out = run(&["steenrod", "--space", space.to_str().unwrap(), "--prime", "3", "--class", "1:0"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("-βP^0"), "{text}");
    assert!(text.contains("P^0"), "{text}");
}

#[test]
fn reports_are_deterministic_apart_from_timing() {
    let dir = TempDir::new().unwrap();
    let space = write(dir.path(), "rp2.json", RP2);
    let strip = |o: Output| {
        let mut v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        v.as_object_mut().unwrap().remove("elapsed_ms");
        v
    };
    let args = ["steenrod", "--space", space.to_str().unwrap(), "--n-max", "2", "--json"];
    assert_eq!(strip(run(&args)), strip(run(&args)));
}

#[test]
fn degrees_above_the_cap_ask_for_a_larger_cap() {
    let dir = TempDir::new().unwrap();
    let space = write(dir.path(), "rp2.json", RP2);
    let out = run(&["steenrod", "--space", space.to_str().unwrap(), "--cap", "1", "--class", "1:0", "--k", "1"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("raise the cap"), "{}", stderr(&out));
}

#[test]
fn resource_guard_reads_the_environment() {
    let dir = TempDir::new().unwrap();
    let space = write(dir.path(), "rp2.json", RP2);
    let out = Command::new(env!("CARGO_BIN_EXE_steenrod"))
        .args(["steenrod", "--space", space.to_str().unwrap(), "--class", "1:0"])
        .env("STEENROD_PRODUCT_LIMIT", "2")
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(stderr(&out).contains("resource guard"), "{}", stderr(&out));
}

#[test]
fn malformed_documents_are_rejected() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", r#"{"cap": 1, "generators": [["v"], ["e"]], "faces": {"e": [{"gen": "w"}, {"gen": "v"}]}}"#);
    let out = run(&["cohomology", "--space", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("\"w\""), "{}", stderr(&out));
    let garbage = write(dir.path(), "garbage.json", "[1, 2");
    assert!(!run(&["cohomology", "--space", garbage.to_str().unwrap()]).status.success());
}

#[test]
fn raw_documents_and_facet_lists_are_accepted() {
    let dir = TempDir::new().unwrap();
    let raw = write(
        dir.path(),
        "s2.json",
        r#"{"cap": 2, "generators": [["*"], [], ["sigma"]],
            "faces": {"sigma": [{"gen": "*", "word": [0]}, {"gen": "*", "word": [0]}, {"gen": "*", "word": [0]}]}}"#,
    );
    let out = run(&["cohomology", "--space", raw.to_str().unwrap(), "--n-max", "2", "--json"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["space"]["betti"], serde_json::json!([1, 0, 1]));

    let facets = write(dir.path(), "circle.json", r#"{"vertices": 3, "facets": [[0, 1], [1, 2], [0, 2]]}"#);
    let out = run(&["cohomology", "--space", facets.to_str().unwrap(), "--prime", "3", "--n-max", "1", "--json"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["space"]["betti"], serde_json::json!([1, 1]));
}

#[test]
fn naturality_of_a_weighted_combination() {
    let dir = TempDir::new().unwrap();
    let source = write(dir.path(), "c3.json", r#"{"builtin": "circle", "d": 3}"#);
    let target = write(dir.path(), "c1.json", r#"{"builtin": "circle", "d": 1}"#);
    let map = write(
        dir.path(),
        "map.json",
        r#"{"maps": [
            {"weight": 1, "images": {"v0": {"gen": "v0"}, "v1": {"gen": "v0"}, "v2": {"gen": "v0"},
                                      "e0": {"gen": "e0"}, "e1": {"gen": "e0"}, "e2": {"gen": "e0"}}},
            {"weight": 2, "images": {"v0": {"gen": "v0"}, "v1": {"gen": "v0"}, "v2": {"gen": "v0"},
                                      "e0": {"gen": "e0"}, "e1": {"gen": "v0", "word": [0]}, "e2": {"gen": "e0"}}}
        ]}"#,
    );
    let args = [
        "naturality", "--space", source.to_str().unwrap(), "--target", target.to_str().unwrap(),
        "--map", map.to_str().unwrap(), "--prime", "3", "--n", "1", "--k", "0", "--json",
    ];
    let out = run(&args);
    assert!(out.status.success(), "{}{}", stdout(&out), stderr(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["verdict"], true);
    assert_eq!(report["diagram_commutes"], true);

    let broken = write(dir.path(), "broken.json", r#"{"images": {"v0": {"gen": "v0"}}}"#);
    let out = run(&[
        "naturality", "--space", source.to_str().unwrap(), "--target", target.to_str().unwrap(),
        "--map", broken.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no image"), "{}", stderr(&out));
}

#[test]
fn verify_suites() {
    let dir = TempDir::new().unwrap();
    let space = write(dir.path(), "rp2.json", RP2);
    let out = run(&["verify", "--space", space.to_str().unwrap(), "--suite", "lemmas", "--prime", "3"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert_eq!(stdout(&out).matches("PASS").count(), 6);
    let out = run(&["verify", "--space", space.to_str().unwrap(), "--suite", "uniqueness", "--degree", "4"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert_eq!(stdout(&out).lines().filter(|l| l.starts_with("PASS")).count(), 5);
    let out = run(&["verify", "--space", space.to_str().unwrap(), "--suite", "naturality"]);
    assert!(!out.status.success());
}
