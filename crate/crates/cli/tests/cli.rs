use std::path::{Path, PathBuf};
use std::process::Command;

use pbw_cli::run_command;
use pbw_core::parse::{parse_polynomial, parse_tensor, PresentationFile};
use pbw_core::{Alphabet, Field};
use serde_json::Value;

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn fixture(name: &str) -> String {
    corpus().join(format!("{name}.json")).to_string_lossy().into_owned()
}

fn fixtures() -> Vec<String> {
    let mut names: Vec<String> = std::fs::read_dir(corpus())
        .unwrap()
        .filter_map(|e| {
            let p = e.unwrap().path();
            (p.extension()? == "json").then(|| p.file_stem().unwrap().to_string_lossy().into_owned())
        })
        .collect();
    names.sort();
    names
}

fn run(args: &[&str]) -> pbw_cli::Outcome {
    let mut argv = vec!["pbw"];
    argv.extend_from_slice(args);
    run_command(argv)
}

fn json_of(args: &[&str]) -> (i32, Value) {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let mut argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    argv.push("--json".into());
    argv.push(out.to_string_lossy().into_owned());
    let refs: Vec<&str> = argv.iter().map(String::as_str).collect();
    let o = run(&refs);
    let v = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    (o.code, v)
}

#[test]
fn exit_codes() {
    let h = fixture("heisenberg");
    assert_eq!(run(&["verify", &h, "--bound", "6"]).code, 0);
    assert_eq!(run(&["ihoe", &h, "--bound", "6"]).code, 0);
    let bad = run(&["verify", &fixture("bad-delta")]);
    assert_eq!(bad.code, 1);
    let tri = bad.report.verdict_named("triangularity").unwrap();
    assert!(!tri.pass);
    assert!(tri.detail.contains("at x"), "{}", tri.detail);
    assert_eq!(run(&["verify", &fixture("square-q")]).code, 1);
    assert_eq!(run(&["lie-gens", &fixture("power-f2")]).code, 2);
    assert_eq!(run(&["verify", "/nonexistent.json"]).code, 2);
    assert_eq!(run(&["nonsense"]).code, 2);
    assert_eq!(run(&["lyndon", "check", "ba"]).code, 0);
    assert_eq!(run(&["lyndon", "check", "ab"]).code, 1);
    assert_eq!(run(&["basis", &h]).code, 2);
    assert_eq!(run(&["basis", &h, "--degree", "9"]).code, 2);
}

#[test]
fn binary_exit_status_and_streams() {
    let exe = env!("CARGO_BIN_EXE_pbw");
    let ok = Command::new(exe)
        .args(["verify", &fixture("heisenberg")])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("PASS condition (1)"));
    let fail = Command::new(exe)
        .args(["verify", &fixture("square-q")])
        .output()
        .unwrap();
    assert_eq!(fail.status.code(), Some(1));
    let quiet = Command::new(exe)
        .args(["verify", &fixture("heisenberg"), "--quiet"])
        .output()
        .unwrap();
    assert!(quiet.stdout.is_empty());
    let usage = Command::new(exe).arg("bogus").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&usage.stderr).contains("Usage"));
}

fn assert_string(v: &Value, key: &str) {
    assert!(v[key].is_string(), "{key} in {v}");
}

fn check_schema(v: &Value) {
    assert_string(v, "command");
    assert!(v["verdicts"].is_array());
    for x in v["verdicts"].as_array().unwrap() {
        assert_string(x, "name");
        assert!(x["pass"].is_boolean());
        assert_string(x, "detail");
    }
    if let Some(b) = v.get("bound") {
        assert!(b.is_u64());
    }
    if let Some(g) = v.get("gamma") {
        for x in g.as_array().unwrap() {
            assert_string(x, "word");
            assert!(x["degree"].is_u64());
        }
    }
    if let Some(h) = v.get("hilbert") {
        assert!(h.as_array().unwrap().iter().all(Value::is_u64));
    }
    if let Some(t) = v.get("tower") {
        for x in t.as_array().unwrap() {
            assert_string(x, "generator");
            assert!(x["degree"].is_u64());
            for d in x["derivation"].as_array().unwrap() {
                assert_string(d, "on");
                assert_string(d, "value");
            }
        }
    }
    let known = [
        "command",
        "bound",
        "field",
        "digest",
        "verdicts",
        "gamma",
        "hilbert",
        "tower",
        "items",
        "diagnostics",
    ];
    for k in v.as_object().unwrap().keys() {
        assert!(known.contains(&k.as_str()), "unexpected key {k}");
    }
}

#[test]
fn json_reports_follow_the_schema() {
    for name in fixtures() {
        let f = fixture(&name);
        for cmd in ["gb", "hilbert", "verify", "hopf-check", "ihoe", "lie-gens", "heights"] {
            let (_, v) = json_of(&[cmd, &f]);
            check_schema(&v);
        }
    }
}

#[test]
fn heisenberg_report_contents() {
    let h = fixture("heisenberg");
    let (code, v) = json_of(&["verify", &h, "--bound", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["bound"], 6);
    let words: Vec<&str> = v["gamma"]
        .as_array()
        .unwrap()
        .iter()
        .map(|g| g["word"].as_str().unwrap())
        .collect();
    assert_eq!(words, ["x1", "x2*x1", "x2"]);
    assert_eq!(v["hilbert"], serde_json::json!([1, 2, 4, 6, 9, 12, 16]));
    let (_, t) = json_of(&["ihoe", &h]);
    let tower = t["tower"].as_array().unwrap();
    assert_eq!(tower[1]["derivation"], serde_json::json!([{"on": "z1", "value": "0"}]));
    assert_eq!(
        tower[2]["derivation"][0],
        serde_json::json!({"on": "z1", "value": "z2"})
    );
}

#[test]
fn overrides_change_the_digest() {
    let h = fixture("heisenberg");
    let a = run(&["gb", &h]).report.digest.unwrap();
    let b = run(&["gb", &h, "--bound", "5"]).report.digest.unwrap();
    let c = run(&["gb", &h, "--field", "Fp:7"]).report;
    assert_ne!(a, b);
    assert_ne!(a, c.digest.clone().unwrap());
    assert_eq!(c.field.as_deref(), Some("Fp:7"));
}

#[test]
fn reports_are_deterministic() {
    for name in fixtures() {
        let f = fixture(&name);
        for cmd in ["gb", "hilbert", "verify", "ihoe", "heights"] {
            let a = run(&[cmd, &f]);
            let b = run(&[cmd, &f]);
            assert_eq!(a.report.to_text(), b.report.to_text(), "{cmd} {name}");
            assert_eq!(a.report.to_json(), b.report.to_json(), "{cmd} {name}");
        }
    }
}

#[test]
fn corpus_expressions_round_trip() {
    for name in fixtures() {
        let text = std::fs::read_to_string(fixture(&name)).unwrap();
        let file: PresentationFile = serde_json::from_str(&text).unwrap();
        let field = file.field.resolve().unwrap();
        let decl: Vec<(String, u32)> = file
            .generators
            .iter()
            .map(|g| (g.name.clone(), g.degree as u32))
            .collect();
        let a = Alphabet::new(&decl).unwrap();
        for src in &file.relations {
            let f = parse_polynomial(src, &a, field).unwrap();
            assert_eq!(parse_polynomial(&f.render(&a), &a, field).unwrap(), f, "{src}");
        }
        for src in file.comultiplication.values() {
            let t = parse_tensor(src, &a, field).unwrap();
            assert_eq!(parse_tensor(&t.render(&a), &a, field).unwrap(), t, "{src}");
        }
    }
    let a = Alphabet::new(&[("x", 1)]).unwrap();
    let half = parse_polynomial("(1/2)*x^2", &a, Field::Rational).unwrap();
    assert_eq!(parse_polynomial(&half.render(&a), &a, Field::Rational).unwrap(), half);
}

fn write_temp(dir: &tempfile::TempDir, body: &str) -> String {
    let p = dir.path().join("p.json");
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn positioned_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        (
            r#"{"generators": [{"name": "x", "degree": 0}], "degree_bound": 3}"#,
            "degree must be positive",
        ),
        (
            r#"{"generators": [{"name": "x1", "degree": 1}, {"name": "x2", "degree": 1}, {"name": "x3", "degree": 3}],
 "relations": ["x2*x1 - x3"], "degree_bound": 4}"#,
            "inhomogeneous: degrees 2 and 3",
        ),
        (
            r#"{"field": {"Fp": 4}, "generators": [{"name": "x", "degree": 1}], "degree_bound": 3}"#,
            "not a prime",
        ),
        (
            r#"{"generators": [{"name": "x", "degree": 1}], "relations": ["x*q"], "degree_bound": 3}"#,
            "unknown generator",
        ),
        (r#"{"generators": [}"#, "line 1"),
    ];
    for (body, needle) in cases {
        let f = write_temp(&dir, body);
        let o = run(&["verify", &f]);
        assert_eq!(o.code, 2, "{body}");
        let text = o.report.diagnostics.join("\n");
        assert!(text.contains(needle), "{text}");
        assert!(text.contains("line"), "{text}");
    }
}

#[test]
fn lyndon_commands() {
    let o = run(&["lyndon", "decompose", "x2 x1 x1 x2"]);
    assert_eq!(o.report.items, ["x2*x1^2*x2 = (x2*x1^2)(x2)"]);
    let o = run(&["lyndon", "check", "x2*x1*x1"]);
    assert_eq!(o.report.verdicts[0].detail, "Shirshov factorization (x2*x1, x1)");
    let o = run(&["lyndon", "bracket", "ba"]);
    assert_eq!(o.report.items, ["[b*a] = b*a - a*b"]);
    let o = run(&["lyndon", "bracket", "ba", "--alphabet", "b,a"]);
    assert_eq!(o.report.items, ["[b*a] = b*a"]);
}
