//! End-to-end tests of the doobpc binary: one test per verb plus the
//! exit-status contract (0 verdict-true, 1 verdict-false, 2 usage/IO).

use std::path::Path;
use std::process::{Command, Output};

use doob_codes::construct::base_d814;
use doob_codes::format::write_matrix;

fn doobpc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_doobpc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn params_lists_admissible_triples_in_ascending_m() {
    let out = doobpc(&["params", "--gamma", "0", "--delta", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "m=7 nprime=0 npp=7\nm=8 nprime=1 npp=4\n");
}

#[test]
fn params_prints_nothing_when_none_exist() {
    let out = doobpc(&["params", "--gamma", "1", "--delta", "3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "");
}

#[test]
fn params_rejects_non_integer_input() {
    let out = doobpc(&["params", "--gamma", "x", "--delta", "3"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn construct_preset_writes_the_exact_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("d814.txt");
    let out = doobpc(&["construct", "--preset", "d814", "-o", path_str(&file)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = stdout(&out);
    assert!(text.contains("rows=3 m=8 nprime=1 npp=4"), "{text}");
    assert!(text.contains("subgroup=64"), "{text}");
    assert_eq!(std::fs::read_to_string(&file).unwrap(), write_matrix(&base_d814()));
}

#[test]
fn construct_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    for f in [&a, &b] {
        let out = doobpc(&["construct", "--gamma", "2", "--delta", "3", "--npp", "7", "-o", path_str(f)]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn construct_from_parameters_reports_the_shape() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("m.txt");
    let out = doobpc(&["construct", "--gamma", "0", "--delta", "3", "--npp", "7", "-o", path_str(&file)]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(stdout(&out).contains("rows=3 m=7 nprime=0 npp=7"));

    let out = doobpc(&["verify", path_str(&file)]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("perfect: true"));
}

#[test]
fn construct_rejects_even_delta_and_inadmissible_parameters() {
    let args = ["construct", "--gamma", "0", "--delta", "4", "--npp", "5", "-o", "/dev/null"];
    let out = doobpc(&args);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("delta = 4"), "{}", stderr(&out));

    let args = ["construct", "--gamma", "0", "--delta", "3", "--npp", "10", "-o", "/dev/null"];
    let out = doobpc(&args);
    assert_eq!(code(&out), 2);

    let out = doobpc(&["construct", "--preset", "bogus", "-o", "/dev/null"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("unknown preset"));

    // Preset and parameters are mutually exclusive; one of them is required.
    let out = doobpc(&["construct", "--preset", "d814", "--gamma", "0", "-o", "/dev/null"]);
    assert_eq!(code(&out), 2);
    let out = doobpc(&["construct", "-o", "/dev/null"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn verify_flags_a_broken_matrix_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("broken.txt");
    // The (1,0,3) example with its first right column bent onto a pair
    // syndrome: still a valid file, no longer a perfect code.
    std::fs::write(&file, "DOOBPC 1\nrows=2 m=1 nprime=0 npp=3\n10||121\n01||113\n").unwrap();
    let out = doobpc(&["verify", path_str(&file)]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("perfect: false"));
}

#[test]
fn verify_reports_parse_errors_with_positions() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.txt");
    std::fs::write(&file, "DOOBPC 2\n").unwrap();
    let out = doobpc(&["verify", path_str(&file)]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("line 1, column 1"), "{}", stderr(&out));

    let out = doobpc(&["verify", path_str(&dir.path().join("missing.txt"))]);
    assert_eq!(code(&out), 2);
}

#[test]
fn decode_corrects_a_single_error() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("d814.txt");
    doobpc(&["construct", "--preset", "d814", "-o", path_str(&file)]);

    let zero = "0000000000000000|00|0000";
    let out = doobpc(&["decode", path_str(&file), zero]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), zero);

    let bumped = "0000000000000000|00|2000";
    let out = doobpc(&["decode", path_str(&file), bumped]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), zero);
}

#[test]
fn decode_rejects_malformed_words() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("d814.txt");
    doobpc(&["construct", "--preset", "d814", "-o", path_str(&file)]);

    for word in ["0000", "0000000000000000|00|00004", "0000000000000000|00|000x"] {
        let out = doobpc(&["decode", path_str(&file), word]);
        assert_eq!(code(&out), 2, "word {word}: {}", stderr(&out));
    }
}

#[test]
fn decode_refuses_imperfect_matrices() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("broken.txt");
    std::fs::write(&file, "DOOBPC 1\nrows=2 m=1 nprime=0 npp=3\n10||121\n01||113\n").unwrap();
    let out = doobpc(&["decode", path_str(&file), "00||000"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("perfect: false"));
}

#[test]
fn analyze_weight3_and_cyclic_reports() {
    let dir = tempfile::tempdir().unwrap();
    let qc = dir.path().join("qc3.txt");
    doobpc(&["construct", "--preset", "d707-qc", "-o", path_str(&qc)]);

    let out = doobpc(&["analyze", path_str(&qc), "--weight3"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "order2=7 order4=0");

    let out = doobpc(&["analyze", path_str(&qc), "--cyclic"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "3 cycles of length 7");
}

#[test]
fn analyze_cyclic_verdict_and_preconditions() {
    let dir = tempfile::tempdir().unwrap();
    let alt = dir.path().join("alt.txt");
    doobpc(&["construct", "--preset", "d707-alt", "-o", path_str(&alt)]);
    let out = doobpc(&["analyze", path_str(&alt), "--cyclic"]);
    assert_eq!(code(&out), 1);
    assert_eq!(stdout(&out).trim(), "not quasi-cyclic");

    let d814 = dir.path().join("d814.txt");
    doobpc(&["construct", "--preset", "d814", "-o", path_str(&d814)]);
    let out = doobpc(&["analyze", path_str(&d814), "--cyclic"]);
    assert_eq!(code(&out), 2, "nprime = 1 violates the cyclic precondition");

    // Exactly one analysis mode must be requested.
    let out = doobpc(&["analyze", path_str(&d814)]);
    assert_eq!(code(&out), 2);
    let out = doobpc(&["analyze", path_str(&d814), "--weight3", "--cyclic"]);
    assert_eq!(code(&out), 2);
}
