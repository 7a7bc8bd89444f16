use std::io::Write;
use std::process::{Command, Stdio};

use lambda_au::cli::{run, Output};
use serde_json::Value;

fn cli(args: &[&str]) -> Output {
    cli_stdin(args, "")
}

fn cli_stdin(args: &[&str], input: &str) -> Output {
    let argv = std::iter::once("lambda-au").chain(args.iter().copied());
    run(argv, &mut input.as_bytes())
}

fn json(out: &Output) -> Value {
    serde_json::from_str(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", out.stdout))
}

#[test]
fn normalize_prints_the_normal_form() {
    let out = cli(&["normalize", "(\\x:a. f x) a"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(out.stdout.trim(), "f(a)");
    let out = cli_stdin(&["normalize", "-"], "\\x:a.\\y:a. (\\u:a. u) y\n");
    assert_eq!(out.stdout.trim(), "\\x:a.\\y:a. y");
}

#[test]
fn bad_input_exits_with_two() {
    for args in [
        &["normalize", "f(a"][..],
        &["normalize", "q(a)"],
        &["normalize", "f(a, a)"],
        &["lgg", "a", "\\x:a. x"],
    ] {
        let out = cli(args);
        assert_eq!(out.code, 2, "{args:?}: {}", out.stdout);
        assert!(!out.stderr.is_empty());
    }
    let out = cli(&["--json", "normalize", "f(a"]);
    assert_eq!(out.code, 2);
    let v: Value = serde_json::from_str(&out.stderr).unwrap();
    assert_eq!(v["error"], "syntax");
}

#[test]
fn lgg_reports_witnesses() {
    let out = cli(&["--json", "lgg", "\\x:a.\\y:a. f(x)", "\\x:a.\\y:a. f(y)"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = json(&out);
    assert_eq!(v["g"], "\\x:a.\\y:a. f(Z(x,y))");
    assert_eq!(v["sigma1"]["Z"], "\\x:a.\\y:a. x");
}

#[test]
fn check_gen_accepts_and_rejects() {
    let ok = cli(&[
        "check-gen",
        "\\x:a.\\y:a. f(Z(x,y))",
        "--sigma1",
        "Z := \\w1:a.\\w2:a. w1",
        "--sigma2",
        "Z := \\w1:a.\\w2:a. w2",
    ]);
    assert_eq!(ok.code, 0, "{}{}", ok.stdout, ok.stderr);
    let found = cli(&["check-gen", "\\x:a.\\y:a. f(R(R(x,y),R(x,y)))"]);
    assert_eq!(found.code, 0, "{}{}", found.stdout, found.stderr);
    let bad = cli(&["check-gen", "\\x:a.\\y:a. f(f(Z(x,y)))"]);
    assert_eq!(bad.code, 1, "{}{}", bad.stdout, bad.stderr);
}

#[test]
fn superpattern_exit_code_is_the_verdict() {
    assert_eq!(cli(&["superpattern", "\\x:a.\\y:a. Z(x,y)"]).code, 0);
    let out = cli(&["--json", "superpattern", "\\x:a.\\y:a. Z(x,x)"]);
    assert_eq!(out.code, 1);
    assert_eq!(json(&out)["violations"][0]["reason"], "DuplicateBoundArg");
}

#[test]
fn tighten_lift_and_pseudo() {
    let out = cli(&["tighten", "\\x:a.\\y:a. f(Z(Z(x,y),Y(x,y)))"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(out.stdout.contains("f(Y(x,y))"), "{}", out.stdout);

    let out = cli(&["--json", "lift", "\\x:a.\\y:a. f(Y(W(x,f(a)),W(f(a),y)))"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = json(&out);
    assert_eq!(
        v["etaShort"],
        "\\x:a.\\y:a. f(Y(W(x,H1(x,y)),W(H2(x,y),y)))"
    );

    let out = cli(&[
        "pseudo",
        "\\x:a.\\y:a. f(Z(W(x,Z(f(a),a)),W(Z(a,f(a)),y)))",
        "--fragment",
        "sp",
        "--collapsed",
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert!(
        out.stdout.contains("f(Y(W(x,H1(x,y)),W(H2(x,y),y)))"),
        "{}",
        out.stdout
    );
}

#[test]
fn chain_certificates_and_limits() {
    let out = cli(&["--json", "chain", "--n", "2", "--fragment", "sp"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let v = json(&out);
    assert_eq!(v["elements"].as_array().unwrap().len(), 3);
    assert_eq!(v["steps"][1]["refutation"]["nNext"], 15);

    let out = cli(&["chain", "--n", "10"]);
    assert_eq!(out.code, 3);
    assert!(out.stderr.contains("65535"), "{}", out.stderr);
}

#[test]
fn paper_examples_and_corpus() {
    let out = cli(&["paper-examples"]);
    assert_eq!(out.code, 0, "{}", out.stdout);
    let a = cli(&["--seed", "5", "corpus", "--count", "4"]);
    let b = cli(&["--seed", "5", "corpus", "--count", "4"]);
    assert_eq!(a.code, 0, "{}", a.stderr);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn the_binary_forwards_streams_and_codes() {
    let exe = env!("CARGO_BIN_EXE_lambda-au");
    let mut child = Command::new(exe)
        .args(["normalize", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"(\\x:a. f x) a")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "f(a)");

    let out = Command::new(exe)
        .args(["superpattern", "\\x:a. Z(x,x)"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
