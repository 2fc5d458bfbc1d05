use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn verify(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_og10-verify"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn lattice(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lattice"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn read_json(p: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn without_runtimes(mut v: Value) -> Value {
    for c in v["checks"].as_array_mut().unwrap() {
        c.as_object_mut().unwrap().remove("runtime_ms");
    }
    v
}

#[test]
fn bounds_table_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bounds.json");
    let out = verify(&["bounds-table", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v = read_json(&path);
    assert_eq!(v["suite"], "bounds-table");
    assert_eq!(v["pass"], true);
    let rows = v["checks"][0]["witness"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 21);
    assert_eq!(rows[0]["b_n"], "0.5");
    assert_eq!(rows[0]["upper"], "6");
    assert_eq!(rows[0]["strict"], false);
    assert_eq!(rows[20]["b_n"], "0.44289");
    for r in &rows[1..] {
        assert_eq!(r["strict"], true);
        assert!(r["lower_num"].is_string() && r["lower_den"].is_string());
    }
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("checks, pass=true"));
}

#[test]
fn failing_check_exits_with_one() {
    // inflating b_n tenfold breaks the strict inequalities
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = verify(&[
        "bounds-table",
        "--safety-factor",
        "10",
        "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = read_json(&path);
    assert_eq!(v["pass"], false);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("bounds-table.safety-factor    FAIL"));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(verify(&["nonsense"]).status.code(), Some(2));
    assert_eq!(
        verify(&["bounds-table", "--safety-factor", "1/2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        verify(&["bounds-table", "--safety-factor", "x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        verify(&["bounds-table", "--threads", "0"]).status.code(),
        Some(2)
    );
    let out = verify(&["bounds-table", "--json", "/nonexistent-dir/r.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn safety_factor_fraction_is_accepted() {
    let out = verify(&["bounds-table", "--safety-factor", "1001/1000"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn thread_count_does_not_change_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let mut docs = Vec::new();
    for t in ["1", "4"] {
        let path = dir.path().join(format!("t{t}.json"));
        let out = verify(&["all", "--threads", t, "--json", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        docs.push(without_runtimes(read_json(&path)));
    }
    assert_eq!(
        serde_json::to_string(&docs[0]).unwrap(),
        serde_json::to_string(&docs[1]).unwrap()
    );
}

#[test]
fn lattice_commands() {
    let out = lattice(&["info", "--name", "leech", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["abs_det"], "1");
    assert_eq!(v["min_norm"], 4);
    assert_eq!(v["roots"], 0);

    let dir = tempfile::tempdir().unwrap();
    let gram = dir.path().join("a2.json");
    std::fs::write(
        &gram,
        r#"{"rows":2,"cols":2,"entries":["2","-1","-1","2"]}"#,
    )
    .unwrap();
    let out = lattice(&[
        "shortest",
        "--gram",
        gram.to_str().unwrap(),
        "--bound",
        "2",
        "--json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["bound"], 2);
    assert_eq!(v["counts_by_norm"]["2"], 6);
    assert_eq!(v["total_pairs"], 3);

    let out = lattice(&["disc", "--name", "a2", "--json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["invariant_factors"], serde_json::json!(["3"]));
    assert_eq!(v["q_generators"], serde_json::json!(["4/3"]));

    assert_eq!(lattice(&["info", "--name", "d4"]).status.code(), Some(2));
    assert_eq!(
        lattice(&["shortest", "--name", "e8"]).status.code(),
        Some(2)
    );
    assert_eq!(
        lattice(&["shortest", "--name", "e8", "--bound", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn isometry_analyze() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.json");
    // rotation of order 3 on A2
    std::fs::write(
        &file,
        r#"{"lattice":"a2","matrix":{"rows":2,"cols":2,"entries":["0","1","-1","-1"]}}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_isometry"))
        .args(["analyze", "--file", file.to_str().unwrap(), "--json"])
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["order"], 3);
    assert_eq!(v["invariant"]["rank"], 0);
    assert_eq!(v["coinvariant"]["rank"], 2);

    std::fs::write(
        &file,
        r#"{"lattice":"a2","matrix":{"rows":2,"cols":2,"entries":["1","1","0","1"]}}"#,
    )
    .unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_isometry"))
        .args(["analyze", "--file", file.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
