use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output};

fn recmon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recmon")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).trim().to_string()
}

fn json(args: &[&str]) -> (Value, i32) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let o = recmon(&all);
    (serde_json::from_slice(&o.stdout).unwrap(), o.status.code().unwrap())
}

#[test]
fn synthesis_and_verdicts() {
    let o = recmon(&["synth", "[a]ff", "--alphabet", "a,b"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "a.no + b.yes");
    let o = recmon(&["verdict", "rec x.(a.x + b.yes)", "--trace", "a.b"]);
    assert_eq!(stdout(&o), "yes");
    let o = recmon(&["verdict", "a.no + b.yes", "--trace", "a"]);
    assert_eq!(stdout(&o), "no");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn lasso_verdict_none() {
    let (v, code) = json(&["verdict", "rec x.(a.x + b.yes)", "--trace", "(a)", "--alphabet", "a,b"]);
    assert_eq!(v["result"]["verdict"], Value::Null);
    assert_eq!(code, 0);
}

#[test]
fn trace_semantics() {
    assert_eq!(stdout(&recmon(&["check", "max X.<a>X", "--trace", "(a)"])), "true");
    let o = recmon(&["check", "<a>tt", "--trace", "", "--semantics", "finfinite"]);
    assert_eq!(stdout(&o), "false");
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn model_checking_an_lts_file() {
    let mut f = tempfile();
    writeln!(f.1, "alphabet: a,b\ninitial: p\np -a-> q\nq -tau-> p\nq -b-> r").unwrap();
    let path = f.0.to_str().unwrap();
    let (v, code) = json(&["mc", "max X.([a]X & [b]ff)", "--lts", path]);
    assert_eq!(v["command"], "mc");
    assert_eq!(code, 1);
    let (v, code) = json(&["check", "<a>tt", "--lts", path, "--state", "q"]);
    assert_eq!(v["result"]["holds"], true);
    assert_eq!(code, 0);
}

#[test]
fn transforms() {
    assert_eq!(stdout(&recmon(&["transform", "a.b.yes + a.a.no"])), "a.(a.no + b.yes)");
    let o = recmon(&["transform", "(a.yes + b.no) && (a.yes + b.yes)", "--alphabet", "a,b"]);
    assert!(o.status.success());
    let o = recmon(&["transform", "a.yes", "--to", "dfa", "--polarity", "accept", "--alphabet", "a,b"]);
    assert!(stdout(&o).contains("accept"));
    let o = recmon(&["equiv", "yes", "no"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn normalisation_and_extraction() {
    let (v, code) = json(&["normalize", "tt & [a]ff", "--alphabet", "a,b"]);
    assert_eq!(v["result"]["slim"], "[a]ff");
    assert_eq!(code, 0);
    assert_eq!(stdout(&recmon(&["extract", "a.yes + b.no"])), "[a]tt & [b]ff");
    let out = stdout(&recmon(&["normalize", "--no-rec", "rec x.(a.yes + b.no)"]));
    assert_eq!(out.lines().next(), Some("a.yes + b.no"));
}

#[test]
fn simulate_is_reproducible() {
    let args = ["--seed", "3", "simulate", "rec x.(a.x + b.yes)", "--process", "rec y.(a.y + b.y)", "--fuel", "20"];
    let a = recmon(&args);
    let b = recmon(&args);
    assert!(a.status.success() || a.status.code() == Some(1));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn error_codes() {
    let (v, code) = json(&["synth", "[c]ff", "--alphabet", "a,b"]);
    assert_eq!(v["error"]["code"], "unknown_action");
    assert_eq!(code, 2);
    let (v, code) = json(&["synth", "max X.X"]);
    assert_eq!(v["error"]["code"], "unguarded");
    assert_eq!(code, 2);
    let o = recmon(&["classify", "[a"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("error[parse]"));
}

#[test]
fn selftest_subset() {
    let o = recmon(&["selftest", "--criteria", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("[PASS] criterion 4"));
}

fn tempfile() -> (std::path::PathBuf, std::fs::File) {
    let path = std::env::temp_dir().join(format!("recmon-cli-{}.lts", std::process::id()));
    let file = std::fs::File::create(&path).unwrap();
    (path, file)
}
