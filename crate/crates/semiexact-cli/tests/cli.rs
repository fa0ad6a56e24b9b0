use std::path::Path;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semiexact"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semiexact"))
        .args(args)
        .env("SEMIEXACT_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn check_valid_document_exits_zero() {
    let out = run(&["check", &fixture("basic.json")]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("document ok"));
}

#[test]
fn ragged_table_is_syntax_class_exit_two() {
    let out = run(&["check", &fixture("ragged.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("syntax error"), "{}", stderr(&out));
}

#[test]
fn unknown_name_is_reference_class_exit_two() {
    let out = run(&["check", &fixture("badref.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("reference error"), "{}", stderr(&out));
}

#[test]
fn axiom_failure_is_validation_class_exit_two() {
    let out = run(&["check", &fixture("badaxiom.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.starts_with("validation error"), "{err}");
    assert!(err.contains("one neutral"), "diagnostic should name the axiom: {err}");
}

#[test]
fn missing_selector_is_reference_class() {
    let out = run(&["classify", &fixture("basic.json"), "-m", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).starts_with("reference error"));
}

#[test]
fn unknown_flag_exits_two() {
    let out = run(&["check", &fixture("basic.json"), "--bogus"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_f_sat() {
    let out = run(&["classify", &fixture("basic.json"), "-m", "f_sat"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("semi_mono              true"), "{text}");
    assert!(text.contains("injective              false"), "{text}");
    assert!(text.contains("k_uniform              false"), "{text}");

    let out = run(&["classify", &fixture("basic.json"), "-m", "f_sat", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["classification"]["semi_mono"], serde_json::json!(true));
    assert_eq!(v["classification"]["k_uniform"], serde_json::json!(false));
}

#[test]
fn exact_sequence_report() {
    let out = run(&["exact", &fixture("basic.json"), "-s", "s1"]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).ends_with("exact\n"));
}

#[test]
fn snake_emits_delta() {
    let out = run(&["snake", &fixture("basic.json"), "-d", "d1", "--emit-delta"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("delta: 0↦0 1↦1"), "{text}");
    assert!(text.contains("certified"), "{text}");
}

#[test]
fn lemma_verifies_identity_ladder() {
    for id in ["SHORT3", "DIAG1", "DIAG2", "SHORT5"] {
        let out = run(&["lemma", &fixture("basic.json"), "-d", "d2", "--id", id]);
        assert!(out.status.success(), "{id}: {}", stderr(&out));
        assert!(stdout(&out).contains("conclusion=Some(true)"), "{id}: {}", stdout(&out));
    }
}

#[test]
fn enumerate_counts() {
    let out = run(&["enumerate", "--max-order", "4", "--count-only"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for line in ["order 1: 1 classes", "order 2: 2 classes", "order 3: 5 classes"] {
        assert!(text.contains(line), "{text}");
    }
}

#[test]
fn fuzz_reports_are_byte_identical() {
    let args = ["fuzz", "--seed", "42", "--trials", "60", "--format", "json"];
    let a = run_with_threads(&args, "1");
    let b = run_with_threads(&args, "1");
    let c = run_with_threads(&args, "4");
    let d = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "same seed twice");
    assert_eq!(a.stdout, c.stdout, "1 vs 4 workers");
    assert_eq!(a.stdout, d.stdout, "capped vs machine parallelism");
}
