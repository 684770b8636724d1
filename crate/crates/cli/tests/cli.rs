use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn ocposet(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ocposet"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn catalog_file(dir: &TempDir, name: &str) -> PathBuf {
    let path = dir.path().join(format!("{name}.json"));
    let out = ocposet(&["catalog", "--name", name, "--out", s(&path)]);
    assert_eq!(code(&out), 0);
    path
}

#[test]
fn catalog_writes_poset_json() {
    let out = ocposet(&["catalog", "--name", "2+2"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["elements"].as_array().unwrap().len(), 4);
    assert_eq!(code(&ocposet(&["catalog", "--name", "K9"])), 1);
}

#[test]
fn recognize_and_verify_round_trip() {
    let dir = TempDir::new().unwrap();
    let tt = catalog_file(&dir, "2+2");
    let rep = dir.path().join("rep.json");
    let out = ocposet(&["recognize", "--poset", s(&tt), "--types", "CD", "--out", s(&rep)]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&rep).unwrap()).unwrap();
    assert_eq!(v["unit_length"], 2);
    assert_eq!(v["intervals"]["y"]["center"], "1");

    assert_eq!(code(&ocposet(&["verify", "--poset", s(&tt), "--evidence", s(&rep), "--types", "CD"])), 0);
    assert_ne!(code(&ocposet(&["verify", "--poset", s(&tt), "--evidence", s(&rep), "--types", "AB"])), 0);

    let fig = write(
        &dir,
        "fig.json",
        r#"{"unit_length": 2, "intervals": {"x": {"center": "0", "type": "C"}, "y": {"center": "1", "type": "C"},
            "z": {"center": "0", "type": "D"}, "w": {"center": "1", "type": "D"}}}"#,
    );
    assert_eq!(code(&ocposet(&["verify", "--poset", s(&tt), "--evidence", s(&fig), "--types", "CD"])), 0);
}

#[test]
fn refusal_exits_two_with_certificate() {
    let dir = TempDir::new().unwrap();
    let fo = catalog_file(&dir, "4+1");
    let cert = dir.path().join("cert.json");
    let out = ocposet(&["recognize", "--poset", s(&fo), "--types", "ABCD", "--out", s(&cert)]);
    assert_eq!(code(&out), 2);
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(v["kind"], "positive_cycle");
    assert_eq!(code(&ocposet(&["verify", "--poset", s(&fo), "--evidence", s(&cert)])), 0);

    let zc = dir.path().join("zc.json");
    let out = ocposet(&["recognize", "--catalog", "Z", "--types", "CD", "--out", s(&zc)]);
    assert_eq!(code(&out), 2);
    assert_eq!(code(&ocposet(&["verify", "--catalog", "Z", "--evidence", s(&zc), "--types", "CD"])), 0);
    assert_eq!(code(&ocposet(&["verify", "--catalog", "Z", "--evidence", s(&zc), "--types", "AB"])), 1);
}

#[test]
fn malformed_input_exits_one() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", r#"{"elements": ["a", "b"], "strict": [["a", "b"], ["b", "a"]]}"#);
    assert_eq!(code(&ocposet(&["recognize", "--poset", s(&bad), "--types", "CD"])), 1);
    let junk = write(&dir, "junk.json", "not json");
    assert_eq!(code(&ocposet(&["recognize", "--poset", s(&junk), "--types", "CD"])), 1);
    assert_ne!(code(&ocposet(&["recognize", "--catalog", "Z", "--types", "CE"])), 0);
    assert_ne!(code(&ocposet(&["recognize", "--catalog", "Z", "--types", "CC"])), 0);
}

#[test]
fn classify_tables() {
    let out = ocposet(&["classify", "--catalog", "V"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(text.lines().count(), 15);
    assert!(text.lines().all(|l| l.ends_with("no")));

    let out = ocposet(&["classify", "--catalog", "3+1", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["BC"], false);
    for t in ["AB", "AC", "CD"] {
        assert_eq!(v[t], true);
    }

    let dir = TempDir::new().unwrap();
    let one = write(&dir, "one.json", r#"{"elements": ["a"]}"#);
    let text = stdout(&ocposet(&["classify", "--poset", s(&one)]));
    assert!(text.lines().all(|l| l.ends_with("yes")));
}

#[test]
fn census_rows() {
    let dir = TempDir::new().unwrap();
    let csv = dir.path().join("census.csv");
    let out = Command::new(env!("CARGO_BIN_EXE_ocposet"))
        .args(["census", "--max-n", "4", "--out", s(&csv)])
        .env("OCPOSET_THREADS", "2")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&csv).unwrap();
    let n4 = text.lines().skip(1).filter(|l| l.split(',').nth(2) == Some("4")).count();
    assert_eq!(n4, 16);
    assert!(String::from_utf8(out.stderr).unwrap().contains("0 discrepancies"));
}

#[test]
fn render_ascii_and_svg() {
    let dir = TempDir::new().unwrap();
    let rep = dir.path().join("rep.json");
    ocposet(&["recognize", "--catalog", "2+2", "--types", "CD", "--out", s(&rep)]);
    let text = stdout(&ocposet(&["render", "--rep", s(&rep), "--format", "ascii"]));
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().all(|l| l.ends_with(" 0") || l.ends_with(" 1")));
    let svg = stdout(&ocposet(&["render", "--rep", s(&rep), "--format", "svg"]));
    assert!(svg.starts_with("<svg"));
}

#[test]
fn assign_types_debug() {
    let dir = TempDir::new().unwrap();
    let centers = write(&dir, "c.json", r#"{"x": "0", "y": "1", "z": "2", "w": "3", "u": "1", "v": "2"}"#);
    let out = ocposet(&["assign-types", "--catalog", "Z", "--centers", s(&centers), "--types", "ABCD"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v.as_object().unwrap().len(), 6);
    let fails = ocposet(&["assign-types", "--catalog", "Z", "--centers", s(&centers), "--types", "CD"]);
    assert_eq!(code(&fails), 2);
}

#[test]
fn output_is_deterministic() {
    let a = stdout(&ocposet(&["recognize", "--catalog", "X3", "--types", "ABCD"]));
    let b = stdout(&ocposet(&["recognize", "--catalog", "X3", "--types", "ABCD"]));
    assert_eq!(a, b);
}
