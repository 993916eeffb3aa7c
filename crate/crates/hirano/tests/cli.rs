//! End-to-end tests of the `hirano` binary: output shapes and the
//! exit-code contract (0 success, 2 parse/usage, 3 dimension, 4 math).

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hirano"))
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn run_ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "expected success, got {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json_of(stdout: &str) -> Value {
    serde_json::from_str(stdout).unwrap()
}

fn arg(p: &Path) -> &str {
    p.to_str().unwrap()
}

// ---------------------------------------------------------------------------
// check

#[test]
fn check_identity_is_hirano_and_strongly_drazin() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "id.json", r#"{"rows": [["1","0"],["0","1"]]}"#);
    let out = run_ok(&["check", "--matrix", arg(&m)]);
    assert!(out.contains("nilpotent: no"), "{out}");
    assert!(out.contains("strongly-drazin: yes (exponent 1)"), "{out}");
    assert!(out.contains("hirano: yes (exponent 1)"), "{out}");
    assert!(out.contains("char_poly: x^0 (x-1)^2 (x+1)^0"), "{out}");
}

#[test]
fn check_rejects_scaled_projection() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", r#"{"rows": [["2","0"],["0","0"]]}"#);
    let out = run_ok(&["check", "--matrix", arg(&m)]);
    assert!(out.contains("strongly-drazin: no"), "{out}");
    assert!(out.contains("hirano: no"), "{out}");
    assert!(!out.contains("char_poly"), "{out}");
}

#[test]
fn check_nilpotent_matrix() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "n.json", r#"{"rows": [["0","1"],["0","0"]]}"#);
    let out = run_ok(&["check", "--matrix", arg(&m)]);
    assert!(out.contains("nilpotent: yes (exponent 2)"), "{out}");
    assert!(out.contains("strongly-drazin: yes"), "{out}");
    assert!(out.contains("hirano: yes"), "{out}");
}

// ---------------------------------------------------------------------------
// invert

#[test]
fn invert_drazin_of_diagonal() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "d.json", r#"{"rows": [["2","0"],["0","0"]]}"#);
    let v = json_of(&run_ok(&["invert", "--matrix", arg(&m), "--kind", "drazin"]));
    assert_eq!(v["kind"], "drazin");
    assert_eq!(v["index"], 1);
    assert_eq!(v["inverse"][0][0], "1/2");
    assert_eq!(v["inverse"][1][1], "0");
    assert_eq!(v["core_projection"][0][0], "1");
    assert_eq!(v["spectral_complement"][1][1], "1");
}

#[test]
fn invert_hirano_of_unipotent() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "u.json", r#"{"rows": [["1","1"],["0","1"]]}"#);
    let v = json_of(&run_ok(&["invert", "--matrix", arg(&m), "--kind", "hirano"]));
    assert_eq!(v["kind"], "hirano");
    // the Hirano inverse of a unipotent matrix is its ordinary inverse
    assert_eq!(v["inverse"][0][0], "1");
    assert_eq!(v["inverse"][0][1], "-1");
    assert_eq!(v["tripotent"][0][1], "0");
    assert_eq!(v["nilpart"][0][1], "1");
}

#[test]
fn invert_hirano_nonexistent_is_math_error() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "d.json", r#"{"rows": [["2","0"],["0","0"]]}"#);
    let out = run(&["invert", "--matrix", arg(&m), "--kind", "hirano"]);
    assert_eq!(out.status.code(), Some(4));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("A - A^3 is not nilpotent"), "{err}");
    assert!(err.contains("-6"), "residual should be printed: {err}");
}

#[test]
fn invert_strong_nonexistent_is_math_error() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", r#"{"rows": [["-1","0"],["0","0"]]}"#);
    let out = run(&["invert", "--matrix", arg(&m), "--kind", "strong"]);
    assert_eq!(out.status.code(), Some(4));
}

// ---------------------------------------------------------------------------
// decompose

#[test]
fn decompose_tripotent_split() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "u.json", r#"{"rows": [["1","1"],["0","1"]]}"#);
    let v = json_of(&run_ok(&["decompose", "--matrix", arg(&m), "--mode", "tripotent"]));
    assert_eq!(v["structured_part"][0][0], "1");
    assert_eq!(v["structured_part"][0][1], "0");
    assert_eq!(v["nilpart"][0][1], "1");
    assert_eq!(v["nil_exponent"], 2);
}

#[test]
fn decompose_jc_of_integer_spectrum_matrix() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", r#"{"rows": [["2","1"],["0","2"]]}"#);
    let v = json_of(&run_ok(&["decompose", "--matrix", arg(&m), "--mode", "jc"]));
    assert_eq!(v["structured_part"][0][0], "2");
    assert_eq!(v["structured_part"][0][1], "0");
    assert_eq!(v["nilpart"][0][1], "1");
}

#[test]
fn decompose_tripotent_nonexistent_is_math_error() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", r#"{"rows": [["2","0"],["0","0"]]}"#);
    let out = run(&["decompose", "--matrix", arg(&m), "--mode", "tripotent"]);
    assert_eq!(out.status.code(), Some(4));
}

// ---------------------------------------------------------------------------
// theorem

const ANTI_TRIANGULAR_BLOCKS: &str = r#"{
  "A": [["1","0"],["2","1"]],
  "B": [["1","-1"],["-1","1"]],
  "C": [["0","1"],["0","1"]],
  "D": [["1","0"],["1","0"]]
}"#;

#[test]
fn theorem_verified_block_instance() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "blocks.json", ANTI_TRIANGULAR_BLOCKS);
    let v = json_of(&run_ok(&["theorem", "--id", "C3_5", "--blocks", arg(&b)]));
    assert_eq!(v["theorem"], "C3_5");
    assert_eq!(v["verdict"], "Verified");
    assert!(v["conclusion"].is_object());
    assert!(v["witness"].is_object());
    for h in v["hypotheses"].as_array().unwrap() {
        assert_eq!(h["holds"], true, "{h}");
    }
}

#[test]
fn theorem_id_parsing_is_forgiving() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "blocks.json", ANTI_TRIANGULAR_BLOCKS);
    let v = json_of(&run_ok(&["theorem", "--id", "c3.5", "--blocks", arg(&b)]));
    assert_eq!(v["theorem"], "C3_5");
}

#[test]
fn theorem_hypotheses_fail_is_reported_with_exit_zero() {
    let dir = TempDir::new().unwrap();
    // perturb B so the annihilation hypotheses break
    let b = write(
        &dir,
        "blocks.json",
        r#"{
  "A": [["1","0","1"],["0","1","1"],["0","0","1"]],
  "B": [["1","0","1"],["0","0","1"],["0","0","-1"]],
  "C": [["1","0","0"],["1","1","0"],["0","0","0"]],
  "D": [["1","0","1"],["0","1","1"],["0","0","0"]]
}"#,
    );
    let out = run(&["theorem", "--id", "T2_7", "--blocks", arg(&b)]);
    assert!(out.status.success());
    let v = json_of(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(v["verdict"], "HypothesesFail");
    assert!(v["witness"].is_null());
}

#[test]
fn theorem_unknown_id_is_usage_error() {
    let dir = TempDir::new().unwrap();
    let b = write(&dir, "blocks.json", ANTI_TRIANGULAR_BLOCKS);
    let out = run(&["theorem", "--id", "T9_9", "--blocks", arg(&b)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_rational_is_parse_error() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", r#"{"rows": [["1.5","0"],["0","1"]]}"#);
    let out = run(&["check", "--matrix", arg(&m)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_json_is_parse_error() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", "not json at all");
    let out = run(&["check", "--matrix", arg(&m)]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn nonconformable_blocks_is_dimension_error() {
    let dir = TempDir::new().unwrap();
    let b = write(
        &dir,
        "blocks.json",
        r#"{
  "A": [["1","0"],["0","1"]],
  "B": [["1"],["1"]],
  "C": [["1","1"]],
  "D": [["1","1"]]
}"#,
    );
    let out = run(&["theorem", "--id", "T2_7", "--blocks", arg(&b)]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn nonsquare_matrix_is_dimension_error() {
    let dir = TempDir::new().unwrap();
    let m = write(&dir, "m.json", r#"{"rows": [["1","0","0"],["0","1","0"]]}"#);
    let out = run(&["check", "--matrix", arg(&m)]);
    assert_eq!(out.status.code(), Some(3));
}

// ---------------------------------------------------------------------------
// fuzz

#[test]
fn fuzz_sweep_all_verified() {
    let out = run_ok(&[
        "fuzz", "--id", "T3_4", "--trials", "25", "--size", "2", "--seed", "11",
    ]);
    let v = json_of(&out);
    assert_eq!(v["theorem"], "T3_4");
    assert_eq!(v["trials"], 25);
    assert_eq!(v["verified"], 25);
    assert_eq!(v["conclusion_fail"], 0);
}

#[test]
fn fuzz_zero_trials_is_empty_summary() {
    let v = json_of(&run_ok(&["fuzz", "--id", "L2_1", "--trials", "0"]));
    assert_eq!(v["trials"], 0);
    assert_eq!(v["verified"], 0);
}

#[test]
fn fuzz_drop_finds_counterexample_and_writes_file() {
    let dir = TempDir::new().unwrap();
    let ce_path = dir.path().join("ce.json");
    let out = run_ok(&[
        "fuzz",
        "--id",
        "T2_7",
        "--trials",
        "40",
        "--size",
        "2",
        "--seed",
        "7",
        "--drop",
        "D^piCA",
        "--counterexample-out",
        arg(&ce_path),
    ]);
    let (summary, _) = out.split_once("counterexample written").expect("no file notice");
    let v = json_of(summary);
    assert_eq!(v["dropped"], "D^piCA");
    assert_eq!(v["counterexample_found"], true);
    let ce: Value = serde_json::from_str(&std::fs::read_to_string(&ce_path).unwrap()).unwrap();
    assert_eq!(ce["theorem"], "T2_7");
    // the counterexample is scored against the full hypothesis list, in
    // which the dropped hypothesis is (deliberately) violated
    assert_eq!(ce["verdict"], "HypothesesFail");
    assert!(ce["A"].is_array() && ce["D"].is_array());
}

#[test]
fn fuzz_as_stated_exposes_literal_reading() {
    // the literal statement omits one class hypothesis; dropping it finds
    // instances where the conclusion genuinely fails, still with exit 0
    let dir = TempDir::new().unwrap();
    let ce_path = dir.path().join("ce.json");
    let out = run_ok(&[
        "fuzz",
        "--id",
        "C2_9",
        "--trials",
        "60",
        "--size",
        "2",
        "--seed",
        "3",
        "--as-stated",
        "--drop",
        "class-A",
        "--counterexample-out",
        arg(&ce_path),
    ]);
    let (summary, _) = out.split_once("counterexample written").expect("no file notice");
    let v = json_of(summary);
    assert_eq!(v["counterexample_found"], true);
    assert!(ce_path.exists());
}

#[test]
fn fuzz_unknown_hypothesis_is_usage_error() {
    let out = run(&["fuzz", "--id", "T2_7", "--trials", "5", "--drop", "nope"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_file_is_parse_error() {
    let out = run(&["check", "--matrix", "/nonexistent/place.json"]);
    assert_eq!(out.status.code(), Some(2));
}
