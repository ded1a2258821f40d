use std::io::Write;
use std::process::{Command, Stdio};

use qtopo::cli::{parse_line, Settings};

fn qtopo(args: &[&str], stdin: &str) -> (String, String, Option<i32>) {
    let mut child = Command::new(env!("CARGO_BIN_EXE_qtopo"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
        out.status.code(),
    )
}

#[test]
fn script_from_stdin() {
    let script = "# comment\nhabiro-eval n=3 fs=[1]\n\nweight data=epsilon diagram=theta\n";
    let (out, _, code) = qtopo(&[], script);
    assert_eq!(out, "1\n6\n");
    assert_eq!(code, Some(0));
}

#[test]
fn syntax_errors_exit_two_with_position() {
    let (_, err, code) = qtopo(&[], "habiro-eval n=3 fs=[1]\nmoyal order=x poly g=1 terms=1 | poly g=1 terms=1\n");
    assert_eq!(code, Some(2));
    assert!(err.contains("line 2, column 13"), "{err}");
}

#[test]
fn semantic_errors_exit_two() {
    let (_, err, code) = qtopo(&["cob-compose", "word", "g=1", "twists=a1", "|", "word", "g=2", "twists=a1"], "");
    assert_eq!(code, Some(2));
    assert!(err.contains("semantic error"), "{err}");
    let (_, _, code) = qtopo(&["--max-genus", "1", "cob-check", "word", "g=2", "twists=a1"], "");
    assert_eq!(code, Some(2));
}

#[test]
fn text_format() {
    let (out, _, code) = qtopo(&["--format", "text", "cob-check", "word", "g=1", "twists=a1"], "");
    assert_eq!(code, Some(0));
    assert_eq!(out, "homology_cobordism: true\nhomology_cylinder: false\ntorelli: false\n");
}

#[test]
fn verify_reports_each_check() {
    let (out, _, code) = qtopo(&["--seed", "7", "verify", "smith"], "");
    assert_eq!(code, Some(0));
    assert_eq!(out, "smith_contract_and_divisors=pass\nsmith=pass\n");
}

#[test]
fn every_verb_has_help() {
    for verb in qtopo::cli::VERBS {
        let (out, _, code) = qtopo(&[verb, "--help"], "");
        assert_eq!(code, Some(0), "{verb}");
        assert!(out.contains("Usage"), "{verb}");
    }
}

#[test]
fn defaults_are_explicit_after_round_trip() {
    let s = Settings::default();
    let cmd = parse_line("habiro-taylor fs=[1]", 1, &s).unwrap();
    assert_eq!(cmd.to_string(), "habiro-taylor level=5 fs=[1]");
    let cmd = parse_line("moyal poly g=1 terms=1 | poly g=1 terms=1", 1, &s).unwrap();
    assert_eq!(cmd.to_string(), "moyal order=4 poly g=1 terms=1 | poly g=1 terms=1");
}
