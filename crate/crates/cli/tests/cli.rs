use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value as Json};
use tempfile::TempDir;

fn elemfact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_elemfact")).args(args).output().unwrap()
}

fn write(dir: &Path, name: &str, v: &Json) -> String {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string(v).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn factor_identity() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "id.json", &json!({"ring": "rational", "n": 2, "entries": [["1", "0"], ["0", "1"]]}));
    let cert = dir.path().join("cert.json");
    let out = elemfact(&["factor", &input, "--output", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v: Json = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(v["factors"].as_array().unwrap().len(), 0);
    let out = elemfact(&["verify", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn factor_then_verify_roundtrip_and_tamper() {
    let dir = TempDir::new().unwrap();
    let input = write(
        dir.path(),
        "x.json",
        &json!({"ring": "rational", "n": 3, "entries": [["2", "1", "0"], ["3", "2", "1/2"], ["0", "0", "1"]]}),
    );
    for alg in ["bsr1", "gauss"] {
        let cert = dir.path().join(format!("{alg}.json"));
        let out = elemfact(&["factor", &input, "--algorithm", alg, "--output", cert.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        assert_eq!(elemfact(&["verify", cert.to_str().unwrap()]).status.code(), Some(0));
    }
    let cert = dir.path().join("bsr1.json");
    let mut v: Json = serde_json::from_str(&fs::read_to_string(&cert).unwrap()).unwrap();
    v["target"]["entries"][1][0] = json!("4");
    let tampered = write(dir.path(), "tampered.json", &v);
    let out = elemfact(&["verify", &tampered]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("first mismatch at entry (2, 1)"), "{text}");
}

#[test]
fn three_exp_lower_shear() {
    let dir = TempDir::new().unwrap();
    let input = write(
        dir.path(),
        "x.json",
        &json!({"ring": {"kind": "poly", "base": "rational"}, "n": 2, "entries": [[["1"], []], [["0", "1"], ["1"]]]}),
    );
    let cert = dir.path().join("cert.json");
    let out = elemfact(&["three-exp", &input, "--output", cert.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let summary = String::from_utf8_lossy(&out.stdout);
    assert!(summary.starts_with("PASS"), "{summary}");
    let residual: f64 = summary
        .lines()
        .find(|l| l.starts_with("residual"))
        .and_then(|l| l.split_whitespace().nth(1))
        .unwrap()
        .parse()
        .unwrap();
    assert!(residual <= 1e-8);
    let out = elemfact(&["verify", cert.to_str().unwrap(), "--grid-n", "50"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn homotopy_csv() {
    let dir = TempDir::new().unwrap();
    let input = write(
        dir.path(),
        "x.json",
        &json!({"ring": {"kind": "poly", "base": "rational"}, "n": 2, "entries": [[["0", "1"], ["-1"]], [["1"], []]]}),
    );
    let csv = dir.path().join("path.csv");
    let out = elemfact(&["homotopy", &input, "--grid-n", "5", "--output", csv.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 26);
    assert_eq!(text.lines().next().unwrap().split(',').count(), 3 + 8 + 1);
}

#[test]
fn ring_override() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "x.json", &json!({"ring": "rational", "n": 2, "entries": [[["1"], ["0", "1"]], [[], ["1"]]]}));
    let out = elemfact(&["factor", &input, "--ring", "poly(rational)"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn parse_errors_exit_2_and_name_the_field() {
    let dir = TempDir::new().unwrap();
    let bad = write(dir.path(), "bad.json", &json!({"ring": "rational", "n": 2, "entries": [["1", "x/y"], ["0", "1"]]}));
    let out = elemfact(&["factor", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("entries[0][1]"), "{}", stderr(&out));

    let input = write(dir.path(), "ok.json", &json!({"ring": "rational", "n": 1, "entries": [["1"]]}));
    let out = elemfact(&["factor", &input, "--ring", "jet(rational"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--ring"), "{}", stderr(&out));

    let out = elemfact(&["three-exp", &input, "--tol=-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--tol"));

    let cohn = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/cohn.json");
    let v: Json = serde_json::from_str(&fs::read_to_string(cohn).unwrap()).unwrap();
    let cohn = write(dir.path(), "cohn.json", &v["matrix"]);
    let out = elemfact(&["factor", &cohn]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unsupported ring"), "{}", stderr(&out));
}

#[test]
fn non_sl_input_is_an_input_error() {
    let dir = TempDir::new().unwrap();
    let input = write(dir.path(), "x.json", &json!({"ring": "rational", "n": 2, "entries": [["2", "0"], ["0", "1"]]}));
    let out = elemfact(&["factor", &input]);
    assert_eq!(out.status.code(), Some(2));
}
