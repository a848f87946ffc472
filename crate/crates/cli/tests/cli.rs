use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_toric-koszul"))
}

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn analyze_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let input = corpus().join("01_unit_square.json");
    let o = run(&["analyze", input.to_str().unwrap(), "--emit-differentials", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report["consistent"], true);
    assert_eq!(report["koszul"]["pass"], true);

    let o = run(&["verify", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "verified");

    // a tampered Betti number is caught
    let text = std::fs::read_to_string(&out).unwrap();
    let mut r: serde_json::Value = serde_json::from_str(&text).unwrap();
    let entries = r["koszul"]["table"]["entries"].as_array_mut().unwrap();
    let e = entries.iter_mut().find(|e| e["i"] == 1).unwrap();
    e["beta"] = serde_json::json!(e["beta"].as_u64().unwrap() + 1);
    let bad = write(dir.path(), "bad.json", &r.to_string());
    assert_eq!(run(&["verify", bad.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "float.json", r#"{"rank": 1, "vertices": [[0], [1.5]]}"#);
    assert_eq!(run(&["analyze", f.to_str().unwrap()]).status.code(), Some(2));
    let f = write(dir.path(), "flat.json", r#"{"rank": 2, "vertices": [[0, 0], [1, 1], [2, 2]]}"#);
    assert_eq!(run(&["analyze", f.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["analyze", "/nonexistent/p.json"]).status.code(), Some(2));
    let f = write(dir.path(), "junk.json", "{}");
    assert_eq!(run(&["verify", f.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn corpus_summary_and_codes() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let o = run(&["corpus", corpus().to_str().unwrap(), "--out-dir", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert!(stdout.contains("10_reeve"));
    assert!(out.join("summary.json").exists());
    assert!(out.join("07_cube.json").exists());

    // one bad file among good ones: input error, the rest is still analyzed
    let mixed = dir.path().join("mixed");
    std::fs::create_dir(&mixed).unwrap();
    std::fs::copy(corpus().join("02_simplex_2.json"), mixed.join("a.json")).unwrap();
    write(&mixed, "b.json", r#"{"rank": 2}"#);
    let o = run(&["corpus", mixed.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stdout).contains("a.json"));
}

#[test]
fn field_choice_does_not_change_the_table() {
    let input = corpus().join("04_simplex_2_dilated.json");
    let fp = run(&["analyze", input.to_str().unwrap(), "--field", "fp"]);
    let q = run(&["analyze", input.to_str().unwrap(), "--field", "q"]);
    let (a, b): (serde_json::Value, serde_json::Value) =
        (serde_json::from_slice(&fp.stdout).unwrap(), serde_json::from_slice(&q.stdout).unwrap());
    assert_eq!(a["koszul"]["table"], b["koszul"]["table"]);
    assert_ne!(a["koszul"]["field"], b["koszul"]["field"]);
}
