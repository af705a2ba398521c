use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn monodec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monodec"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8")
}

fn write(dir: &TempDir, name: &str, body: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const DIAMOND: &str = r#"{
  "domain": {
    "elements": ["bot", "b", "a", "top"],
    "covers": [["bot", "a"], ["bot", "b"], ["a", "top"], ["b", "top"]]
  },
  "values": {"bot": 0, "b": 0, "a": 2, "top": 1}
}"#;

#[test]
fn xor_inf_formula() {
    let dir = TempDir::new().unwrap();
    let tt = write(&dir, "xor.tt", "n=2\n0110\n");
    let out = monodec(&["inf", "--tt", s(&tt), "--emit", "formula"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out).trim(),
        "(imp (imp (or x1 x2) (and x1 x2)) lit:0)"
    );

    let out = monodec(&["inf", "--tt", s(&tt), "--emit", "parts"]);
    assert_eq!(stdout(&out), "0111\n0001\n0000\n");
}

#[test]
fn inf_json_reverifies() {
    let dir = TempDir::new().unwrap();
    let tt = write(&dir, "f.tt", "n=3\n01101001\n");
    let out = monodec(&["inf", "--tt", s(&tt)]);
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["arrows"], 2);
    let f = write(&dir, "f.json", &stdout(&out));
    let out = monodec(&["verify", "--formula", s(&f), "--against", s(&tt)]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn check_axioms_boolean_dual() {
    let out = monodec(&[
        "check-axioms",
        "--algebra",
        "boolean-dual",
        "--system",
        "A*",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["system"], "A*");
}

#[test]
fn check_axioms_failure_exits_one() {
    let out = monodec(&[
        "check-axioms",
        "--algebra",
        "chain-primal:3",
        "--system",
        "A*",
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn decompose_then_verify() {
    let dir = TempDir::new().unwrap();
    let map = write(
        &dir,
        "m.json",
        r#"{"domain": "grid:3:2", "values": {"00":2,"01":0,"02":1,"10":0,"11":2,"12":0,"20":1,"21":0,"22":2}}"#,
    );
    for alg in ["chain-primal:3", "chain-dual:3"] {
        let out = monodec(&["decompose", "--map", s(&map), "--algebra", alg]);
        assert_eq!(out.status.code(), Some(0), "{alg}");
        let form = write(&dir, "form.json", &stdout(&out));
        let out = monodec(&["verify", "--form", s(&form), "--against", s(&map)]);
        assert_eq!(out.status.code(), Some(0), "{alg}: {}", stdout(&out));
    }
}

#[test]
fn verify_bad_form_exits_one() {
    let dir = TempDir::new().unwrap();
    let map = write(
        &dir,
        "m.json",
        r#"{"domain": "chain:3", "values": {"0": 0, "1": 2, "2": 1}}"#,
    );
    let form = write(
        &dir,
        "bad.json",
        r#"{"orientation": "primal", "algebra": "chain-primal:3", "domain": "chain:3",
            "parts": [["0", "2", "2"], ["0", "1", "1"]]}"#,
    );
    let out = monodec(&[
        "verify",
        "--form",
        s(&form),
        "--against",
        s(&map),
        "--emit",
        "text",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("mismatch at"));
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let missing = dir.path().join("none.json");
    assert_eq!(
        monodec(&["inf", "--tt", s(&missing)]).status.code(),
        Some(2)
    );
    let tt = write(&dir, "odd.tt", "n=2\n011\n");
    assert_eq!(monodec(&["inf", "--tt", s(&tt)]).status.code(), Some(2));
    let map = write(&dir, "m.json", DIAMOND);
    assert_eq!(
        monodec(&[
            "decompose",
            "--map",
            s(&map),
            "--algebra",
            "no-such-algebra"
        ])
        .status
        .code(),
        Some(2)
    );
}

#[test]
fn diamond_chain_strategy_exits_three_with_trace() {
    let dir = TempDir::new().unwrap();
    let map = write(&dir, "d.json", DIAMOND);
    let out = monodec(&[
        "decompose",
        "--map",
        s(&map),
        "--algebra",
        "chain-primal:3",
        "--strategy",
        "t2-chain",
    ]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("(a, top)"), "{err}");
    assert!(err.contains("\"steps\""), "{err}");
}

#[test]
fn mv_output_reverifies() {
    let dir = TempDir::new().unwrap();
    let table = write(
        &dir,
        "t.json",
        r#"{"q": 3, "n": 2, "values": [0, 2, 1, 1, 0, 2, 2, 1, 0]}"#,
    );
    for emit in ["json", "text"] {
        let out = monodec(&["mv", "--table", s(&table), "--emit", emit]);
        assert!(out.status.success());
        let f = write(&dir, "f.out", &stdout(&out));
        let out = monodec(&["verify", "--formula", s(&f), "--against", s(&table)]);
        assert_eq!(out.status.code(), Some(0), "{emit}: {}", stdout(&out));
    }
}

#[test]
fn theta_grounded_reverifies() {
    let dir = TempDir::new().unwrap();
    let map = write(
        &dir,
        "m.json",
        r#"{"domain": "grid:3:2", "values": {"00":0,"01":2,"02":1,"10":1,"11":0,"12":2,"20":2,"21":1,"22":0}}"#,
    );
    let out = monodec(&[
        "theta",
        "--map",
        s(&map),
        "--algebra",
        "chain-primal:3",
        "--emit",
        "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(
        text.starts_with(";; q=3 n=2 algebra=chain-primal:3"),
        "{text}"
    );
    let f = write(&dir, "f.txt", &text);
    let out = monodec(&["verify", "--formula", s(&f), "--against", s(&map)]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
}

#[test]
fn embed_cube() {
    let out = monodec(&["embed", "--poset", "chain:3"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["cube"], 3);
    assert_eq!(v["table"]["0"], "100");
    assert_eq!(v["table"]["2"], "111");
}

#[test]
fn repeat_runs_are_identical() {
    let dir = TempDir::new().unwrap();
    let map = write(&dir, "d.json", DIAMOND);
    let tt = write(&dir, "f.tt", "10010110");
    let runs: [&[&str]; 3] = [
        &[
            "decompose",
            "--map",
            s(&map),
            "--algebra",
            "chain-dual:3",
            "--strategy",
            "t2-fold",
        ],
        &["inf", "--tt", s(&tt)],
        &["selftest", "--only", "3,9", "--emit", "json"],
    ];
    for args in runs {
        let a = monodec(args);
        let b = monodec(args);
        assert_eq!(a.status.code(), b.status.code());
        if args[0] == "selftest" {
            // timings differ between runs
            let strip = |o: &Output| {
                let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
                for r in v.as_array_mut().unwrap() {
                    r.as_object_mut().unwrap().remove("millis");
                }
                v
            };
            assert_eq!(strip(&a), strip(&b));
        } else {
            assert_eq!(a.stdout, b.stdout, "{args:?}");
        }
    }
}
