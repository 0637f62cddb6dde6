//! End-to-end tests of the binary: outputs, exit codes, and the
//! machine-format round trip.

use std::process::Command;

fn lmo(args: &[&str]) -> (String, String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_lmo"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
        out.status.code().unwrap_or(-1),
    )
}

#[test]
fn eval_of_eps_is_empty() {
    let (stdout, _, code) = lmo(&["eval", "eps"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "W = []; Y = 1*∅");
}

#[test]
fn eval_of_identity_strand() {
    let (stdout, _, code) = lmo(&["eval", "id[.]"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "W = [colors=1-,1+; 0,1; 1,0]; Y = 1*∅");
}

#[test]
fn eval_of_poincare_has_half_theta() {
    let (stdout, _, code) = lmo(&["eval", "-d", "2", "Y o (v+ x v+ x v+)"]);
    assert_eq!(code, 0);
    let line = stdout.trim();
    assert!(line.contains("theta"), "missing theta in {line}");
    assert!(
        line.contains("-1/2*theta") || line.contains("1/2*theta"),
        "theta coefficient must be ±1/2: {line}"
    );
}

#[test]
fn casson_of_poincare_is_unit() {
    let (stdout, _, code) = lmo(&["casson", "Y o (v+ x v+ x v+)"]);
    assert_eq!(code, 0);
    let lambda = stdout.trim();
    assert!(lambda == "1" || lambda == "-1", "got {lambda}");
}

#[test]
fn lk_of_c_expression() {
    let expr = "(mu x mu) o Pinv[(..),.,.] o (P[.,.,.] x id[.]) o (id[.] x delta x id[.]) o (v- x v+ x v-)";
    let (stdout, _, code) = lmo(&["lk", expr]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "[colors=1-,2-; 0,-1; -1,0]");
}

#[test]
fn machine_output_round_trips() {
    let (stdout, _, code) = lmo(&["eval", "--format", "machine", "c"]);
    assert_eq!(code, 0);
    let line = stdout.trim().to_string();
    let text = line
        .strip_prefix("W = ")
        .map(|rest| format!("W = {rest}"))
        .unwrap();
    let parsed = lmo_core::notation::parse_element(&text, 2).unwrap();
    let table = lmo_core::generators::builtin_degree2();
    let stored = table
        .value_of(lmo_core::generators::GeneratorName::CoDuality)
        .unwrap();
    assert_eq!(parsed, stored);
}

#[test]
fn parse_error_exits_one() {
    let (_, stderr, code) = lmo(&["eval", "mu o ("]);
    assert_eq!(code, 1);
    assert!(stderr.contains("parse error"), "stderr: {stderr}");
}

#[test]
fn type_error_exits_two() {
    let (_, stderr, code) = lmo(&["eval", "mu o eta"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("composition mismatch"), "stderr: {stderr}");
}

#[test]
fn check_suites_pass() {
    for suite in ["hopf", "invert-t1", "c-cross", "casson"] {
        let (stdout, _, code) = lmo(&["check", suite]);
        assert_eq!(code, 0, "suite {suite} failed:\n{stdout}");
        assert!(stdout.contains("all checks passed"));
    }
    let (stdout, _, code) = lmo(&["check", "morita", "--trials", "12", "--seed", "7"]);
    assert_eq!(code, 0, "morita failed:\n{stdout}");
}

#[test]
fn check_all_runs_every_suite() {
    let (stdout, _, code) = lmo(&["check", "all", "--trials", "5", "--seed", "2"]);
    assert_eq!(code, 0, "stdout:\n{stdout}");
    for needle in ["hopf", "invert-t1", "c-cross", "casson", "morita", "closure", "gaussian", "star"] {
        assert!(stdout.contains(needle), "missing suite {needle}:\n{stdout}");
    }
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let (_, _, code) = lmo(&["check", "nonsense"]);
    assert_eq!(code, 1);
}

#[test]
fn seeded_checks_are_deterministic() {
    let a = lmo(&["check", "star", "--trials", "6", "--seed", "3"]);
    let b = lmo(&["check", "star", "--trials", "6", "--seed", "3"]);
    assert_eq!(a, b);
}

#[test]
fn failing_check_exits_three() {
    // Flip the Y row of the built-in table; the hopf suite must fail with
    // exit code 3.
    let table = lmo_core::generators::builtin_degree2();
    let y = table
        .value_of(lmo_core::generators::GeneratorName::YGen)
        .unwrap();
    let log = y.y_part().log_union().unwrap();
    let doc = table.to_string();
    let old = format!("logY = {}", lmo_core::notation::series_to_string(&log));
    let new = format!(
        "logY = {}",
        lmo_core::notation::series_to_string(&log.neg())
    );
    let tampered = doc.replace(&old, &new);
    let dir = std::env::temp_dir().join("lmo-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("tampered.table");
    std::fs::write(&path, tampered).unwrap();
    let (stdout, _, code) = lmo(&["check", "hopf", "--table", path.to_str().unwrap()]);
    assert_eq!(
        code, 3,
        "stdout:
{stdout}"
    );
    assert!(stdout.contains("FAIL"));
}

#[test]
fn table_files_load() {
    let table = lmo_core::generators::builtin_degree2();
    let dir = std::env::temp_dir().join("lmo-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("builtin.table");
    std::fs::write(&path, table.to_string()).unwrap();
    let (stdout, _, code) = lmo(&["eval", "--table", path.to_str().unwrap(), "v+"]);
    assert_eq!(code, 0);
    assert!(
        stdout.contains("1/48"),
        "v+ must carry its bubble: {stdout}"
    );
}
