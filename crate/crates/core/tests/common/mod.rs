//! Golden-file cases for the `realq` binary, shared by the integration tests
//! and the acceptance runner.
//!
//! Set `REALQ_BLESS=1` to rewrite the golden files from the current binary.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
    pub exit: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], exit: i32) -> Case {
    Case { name, args, exit }
}

pub const CASES: &[Case] = &[
    case("encode_single", &["encode", "--input", "tests/fixtures/s_gate.json"], 0),
    case(
        "encode_multiparty",
        &["encode", "--input", "tests/fixtures/real_circuit.json", "--mode", "multiparty"],
        0,
    ),
    case(
        "encode_separable",
        &["encode", "--input", "tests/fixtures/yy_separable.json", "--mode", "separable", "--format", "json"],
        0,
    ),
    case("verify_lemma1", &["verify", "--input", "tests/fixtures/lemma_circuit.json", "--suite", "lemma1"], 0),
    case("verify_lemma2", &["verify", "--input", "tests/fixtures/lemma_circuit.json", "--suite", "lemma2"], 0),
    case(
        "verify_lemma3_seed5",
        &["verify", "--input", "tests/fixtures/yy_separable.json", "--suite", "lemma3", "--seed", "5"],
        0,
    ),
    case(
        "verify_lemma4",
        &["verify", "--input", "tests/fixtures/yy_separable.json", "--suite", "lemma4", "--format", "json"],
        0,
    ),
    case("verify_spectrum", &["verify", "--input", "tests/fixtures/diag_accept.json", "--suite", "spectrum"], 0),
    case(
        "verify_lemma1_tight",
        &["verify", "--input", "tests/fixtures/lemma_circuit.json", "--suite", "lemma1", "--tol", "1e-30"],
        1,
    ),
    case("prover_qma", &["prover", "--input", "tests/fixtures/diag_accept.json", "--kind", "qma"], 0),
    case(
        "prover_qma_lemma_circuit",
        &["prover", "--input", "tests/fixtures/lemma_circuit.json", "--format", "json"],
        0,
    ),
    case("prover_qma2", &["prover", "--input", "tests/fixtures/xx_separable.json", "--kind", "qma2"], 0),
    case(
        "prover_qma2_yy",
        &["prover", "--input", "tests/fixtures/yy_separable.json", "--kind", "qma2", "--restarts", "5", "--seed", "3"],
        0,
    ),
    case("counterexample", &["counterexample"], 0),
    case("counterexample_h2_json", &["counterexample", "--qubits", "2", "--base", "H", "--format", "json"], 0),
    case("counterexample_random3", &["counterexample", "--qubits", "3", "--base", "random", "--seed", "7"], 0),
    case(
        "encode_product_projector",
        &["encode", "--input", "tests/fixtures/product_projector.json", "--mode", "multiparty"],
        0,
    ),
    case(
        "prover_qma2_product_projector",
        &["prover", "--input", "tests/fixtures/product_projector.json", "--kind", "qma2", "--format", "json"],
        0,
    ),
    case("error_malformed_row", &["encode", "--input", "tests/fixtures/malformed_row.json"], 2),
    case("error_bad_syntax", &["verify", "--input", "tests/fixtures/bad_syntax.json", "--suite", "lemma1"], 2),
    case("error_missing_file", &["verify", "--input", "tests/fixtures/absent.json", "--suite", "lemma1"], 2),
    case(
        "error_nonhermitian_factor",
        &["verify", "--input", "tests/fixtures/nonhermitian_factor.json", "--suite", "lemma3"],
        3,
    ),
    case("error_not_povm", &["prover", "--input", "tests/fixtures/not_povm.json"], 3),
    case(
        "error_qma2_without_separable",
        &["prover", "--input", "tests/fixtures/diag_accept.json", "--kind", "qma2"],
        3,
    ),
    case(
        "error_cross_party_lemma2",
        &["verify", "--input", "tests/fixtures/cross_party.json", "--suite", "lemma2"],
        3,
    ),
];

pub fn manifest_dir() -> &'static Path {
    Path::new(env!("CARGO_MANIFEST_DIR"))
}

fn golden_path(name: &str, stream: &str) -> PathBuf {
    manifest_dir().join("tests/golden").join(format!("{name}.{stream}"))
}

pub fn realq() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_realq"));
    cmd.current_dir(manifest_dir()).env_remove("REALQ_SEED");
    cmd
}

pub struct Outcome {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Outcome {
    let out = realq().args(args).output().expect("realq runs");
    Outcome {
        exit: out.status.code().expect("exit code"),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

fn compare(name: &str, stream: &str, actual: &str, bless: bool) -> Result<(), String> {
    let path = golden_path(name, stream);
    if bless {
        if actual.is_empty() {
            let _ = std::fs::remove_file(&path);
        } else {
            std::fs::write(&path, actual).map_err(|e| format!("{}: {e}", path.display()))?;
        }
        return Ok(());
    }
    let expected = std::fs::read_to_string(&path).unwrap_or_default();
    if expected == actual {
        Ok(())
    } else {
        Err(format!("{name}.{stream} differs\n--- expected\n{expected}--- actual\n{actual}"))
    }
}

/// Runs one case and compares exit code, stdout and stderr byte for byte.
pub fn check(case: &Case) -> Result<(), String> {
    let bless = std::env::var_os("REALQ_BLESS").is_some();
    let got = run(case.args);
    if got.exit != case.exit {
        return Err(format!("{}: exit {} (expected {})\n{}", case.name, got.exit, case.exit, got.stderr));
    }
    compare(case.name, "stdout", &got.stdout, bless)?;
    compare(case.name, "stderr", &got.stderr, bless)
}
