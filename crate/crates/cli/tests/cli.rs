use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn actgeo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_actgeo")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn f(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn equiv_exit_codes() {
    let o = actgeo(&["equiv", &f("s3.json"), "coset(c2a)", "coset(c2b)"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("\"verdict\": \"equivalent\""));

    let o = actgeo(&["equiv", &f("z2.json"), "S + z", "S + z + z"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "not-equivalent");
    assert_eq!(v["witness"]["congruence"], "[0,0,1,1]");

    let o = actgeo(&["equiv", &f("s3.json"), "S", "S ^ 2"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn lattice_counts() {
    for (group, target, arity, count) in
        [("z2.json", "S", "1", 2), ("z2.json", "z", "2", 1), ("trivial.json", "z + z", "3", 5)]
    {
        let o = actgeo(&["--json", "lattice", &f(group), target, "--arity", arity]);
        assert!(o.status.success(), "{}", stderr(&o));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["count"], count, "{group} {target} k={arity}");
    }
    let o = actgeo(&["lattice", &f("trivial.json"), "z + z", "--arity", "3"]);
    assert!(stdout(&o).starts_with("5 closed congruences on F_3"));
}

#[test]
fn malformed_group_reports_location() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, r#"{"order": 2, "table": [[0, 1], [1]]}"#).unwrap();
    let o = actgeo(&["validate", path.to_str().unwrap()]);
    assert!(o.status.code().unwrap() >= 3);
    assert!(stderr(&o).contains("table row 1 has length 1, expected 2"), "{}", stderr(&o));

    std::fs::write(&path, "{\"order\": 2,\n \"table\": [[0, 1] [1, 0]]}").unwrap();
    let o = actgeo(&["validate", path.to_str().unwrap()]);
    assert!(o.status.code().unwrap() >= 3);
    assert!(stderr(&o).contains("bad.json:2:"), "{}", stderr(&o));
}

#[test]
fn bad_expression_points_at_position() {
    let o = actgeo(&["canonical", &f("z2.json"), "S + + z"]);
    assert_eq!(o.status.code(), Some(3));
    let err = stderr(&o);
    assert!(err.contains("position 5"), "{err}");
    assert!(err.contains('^'));
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(actgeo(&["equiv", &f("z2.json")]).status.code(), Some(3));
    assert_eq!(actgeo(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(actgeo(&["--help"]).status.code(), Some(0));
}

#[test]
fn dot_output_is_written_and_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.dot");
    let b = dir.path().join("b.dot");
    for p in [&a, &b] {
        let o = actgeo(&["lattice", &f("s3.json"), "coset(c2a)", "--arity", "1", "--dot", p.to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert!(text.starts_with("digraph closed {"));
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
}

#[test]
fn size_cap_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_actgeo"))
        .args(["lattice", &f("s3.json"), "S", "--arity", "2"])
        .env("ACTGEO_SIZE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("10"), "{}", stderr(&o));

    let o = actgeo(&["lattice", &f("s3.json"), "S", "--arity", "1"]);
    assert!(o.status.success());
}

#[test]
fn unknown_suite_lists_available() {
    let o = actgeo(&["check", &f("z2.json"), "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(3));
    let err = stderr(&o);
    assert!(err.contains("unknown check suite 'nope'"));
    assert!(err.contains("cyclic-conjugacy"));
}

#[test]
fn single_check_on_fixture() {
    let o = actgeo(&["check", &f("z4.json"), "--suite", "cyclic-conjugacy"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["failed"], 0);
}

#[test]
fn subgroup_labels_for_s3() {
    let o = actgeo(&["--json", "subgroups", &f("s3.json")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let labels: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["label"].as_str().unwrap()).collect();
    assert_eq!(labels, ["c1a", "c2a", "c2b", "c2c", "c3a", "c6a"]);
}
