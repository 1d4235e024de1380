//! End-to-end checks of the command-line interface: the exit-code
//! contract (0 affirmative, 1 negative, 2 unknown, 3 input error) and
//! output determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use qsl::kripke::cat_model;

fn qsl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsl"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn tmp_path(name: &str) -> PathBuf {
    let mut path = std::env::temp_dir();
    path.push(format!("qsl-cli-test-{}-{name}", std::process::id()));
    path
}

#[test]
fn validate_m_factivity_exits_zero() {
    let out = qsl(&["validate", "M |psi> -> |psi>", "--bound", "3", "--class", "T"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("ValidUpToBound(3)"));
}

#[test]
fn countermodel_for_non_theorem_exits_one_and_writes_model() {
    let model_path = tmp_path("countermodel.json");
    let out = qsl(&[
        "countermodel",
        "<>|p> -> []|p>",
        "--bound",
        "2",
        "--class",
        "T",
        "--out",
        model_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("verdict: Countermodel"));
    let json = std::fs::read_to_string(&model_path).expect("model file written");
    qsl::kripke::Model::from_json(&json).expect("model file parses");
    std::fs::remove_file(&model_path).ok();
}

#[test]
fn eval_measurement_on_the_cat_model() {
    let model_path = tmp_path("cat.json");
    std::fs::write(&model_path, cat_model().to_json()).expect("write model");
    let out = qsl(&[
        "eval",
        "M (|alive> * |dead>)",
        "--model",
        model_path.to_str().unwrap(),
        "--world",
        "w0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("value: true"));
    assert!(text.contains("euclidean=false"));
    std::fs::remove_file(&model_path).ok();
}

#[test]
fn qderive_blocks_explosion_but_accepts_the_conjunction() {
    let exploded = qsl(&[
        "qderive",
        "--gamma",
        "|p>; ~3 |p>",
        "--alpha",
        "|q>",
        "--bound",
        "2",
        "--class",
        "S5",
    ]);
    assert_eq!(exploded.status.code(), Some(1));
    assert!(stdout(&exploded).contains("derivable: no"));

    let conjunction = qsl(&[
        "qderive",
        "--gamma",
        "|p>; ~3 |p>",
        "--alpha",
        "|p> & ~3 |p>",
        "--bound",
        "2",
        "--class",
        "S5",
    ]);
    assert_eq!(conjunction.status.code(), Some(0));
    assert!(stdout(&conjunction).contains("derivable: yes"));
}

#[test]
fn check_proof_accepts_the_bundled_script() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/thm-3.3.json");
    let out = qsl(&["check-proof", path]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("proof: ok"));
    assert!(text.contains("name: thm-3.3"));
}

#[test]
fn parse_error_exits_three() {
    let out = qsl(&["parse", "|p> * |p>"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn usage_error_exits_three() {
    let out = qsl(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn suite_passes_and_output_is_deterministic() {
    let first = qsl(&["suite"]);
    let second = qsl(&["suite"]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout(&first).contains("suite: pass"));
}

#[test]
fn validate_output_is_deterministic() {
    let args = ["countermodel", "<>|p> -> |p>", "--bound", "3", "--class", "K"];
    let first = qsl(&args);
    let second = qsl(&args);
    assert_eq!(first.status.code(), Some(1));
    assert_eq!(first.stdout, second.stdout);
}
