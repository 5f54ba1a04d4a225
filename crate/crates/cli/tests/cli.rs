//! Golden tests for the binary: pinned output strings and the exit-code
//! contract (0 ok/pass, 1 failed verification, 2 bad input).

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn finrel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finrel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn finrel_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_finrel"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary spawns");
    child.stdin.as_mut().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "unexpected exit {:?}: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap().trim_end().to_string()
}

#[test]
fn composing_an_involution_with_itself_gives_the_empty_relation() {
    let out = finrel(&["compose", "perm:(0 1)", "perm:(0 1)", "--json"]);
    assert_eq!(stdout(&out), r#"{"support":[],"pairs":[]}"#);
    let out = finrel(&["compose", "perm:(0 1)", "perm:(0 1)"]);
    assert_eq!(stdout(&out), "perm:()");
}

#[test]
fn composition_reads_stdin_when_no_arguments_are_given() {
    let out = finrel_stdin(&["compose"], "perm:(0 1)\nperm:(1 2)\n");
    assert_eq!(stdout(&out), "perm:(0 2 1)");
}

#[test]
fn disjoint_transpositions_commute() {
    let out = finrel(&["commutes", "perm:(0 1)", "perm:(2 3)"]);
    assert_eq!(stdout(&out), "true");
    let out = finrel(&["commutes", "perm:(0 1)", "perm:(1 2)"]);
    assert_eq!(stdout(&out), "false");
}

#[test]
fn inverse_and_support_print_both_shapes() {
    let out = finrel(&["inverse", "perm:(0 1 2)"]);
    assert_eq!(stdout(&out), "perm:(0 2 1)");
    let out = finrel(&["support", r#"{"support":[0,1],"pairs":[[0,1]]}"#]);
    assert_eq!(stdout(&out), "{0, 1}");
    let out = finrel(&["support", "perm:(0 1)", "--json"]);
    assert_eq!(stdout(&out), "[0,1]");
}

#[test]
fn enumeration_is_window_ordered_and_filterable() {
    let out = finrel(&["enum", "--family", "fsym", "--window", "0,1"]);
    assert_eq!(stdout(&out), "perm:(0 1)\nperm:()");
    let out = finrel(&["enum", "--family", "frel", "--window", "0..2", "--supp-eq", "1"]);
    assert_eq!(stdout(&out).lines().count(), 3);
}

#[test]
fn centralizer_targets_come_from_arguments_or_stdin() {
    let out = finrel(&["centralizer", "perm:(0 1)", "--family", "fsym", "--window", "0..2"]);
    assert_eq!(stdout(&out), "perm:(0 1)\nperm:()");
    let out = finrel_stdin(
        &["centralizer", "--stdin", "--family", "fsym", "--window", "0..2"],
        "perm:(0 1)\n",
    );
    assert_eq!(stdout(&out), "perm:(0 1)\nperm:()");
    let out = finrel(&[
        "centralizer",
        "perm:(0 1)",
        "--double",
        "--family",
        "fsym",
        "--window",
        "0..2",
    ]);
    assert_eq!(stdout(&out), "perm:(0 1)\nperm:()");
}

#[test]
fn the_separating_witness_swaps_with_the_first_fresh_point() {
    let out = finrel(&["witness-prop2", "0", "--avoid", "1,2", "--family", "fsym"]);
    assert_eq!(stdout(&out), "perm:(0 3)");
    let out = finrel(&["witness-prop2", "0", "--avoid", "1,2", "--fresh-from", "7"]);
    assert_eq!(stdout(&out), "perm:(0 7)");
}

#[test]
fn neighborhood_witness_json_is_the_documented_shape() {
    let out = finrel(&["witness-neighborhood", "perm:(0 1)", "--n", "2", "--family", "fsym"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["n"], 2);
    assert_eq!(v["center"]["support"], serde_json::json!([0, 1]));
    let constraints = v["commute_constraints"].as_array().unwrap();
    assert_eq!(constraints.len(), 6);
    assert_eq!(constraints[0]["support"], serde_json::json!([0, 2]));
    assert_eq!(constraints[5]["support"], serde_json::json!([1, 7]));
    assert_eq!(v["trace"][0]["branch"], "B");
    assert_eq!(v["trace"][0]["F_before"], serde_json::json!([0, 1]));
    assert_eq!(v["trace"][1]["F_after"], serde_json::json!([0, 1, 2, 3, 4, 5, 6, 7]));
    assert_eq!(v["exclusions"], serde_json::json!([]));

    let out = finrel(&[
        "witness-neighborhood",
        "perm:(0 1)",
        "--n",
        "2",
        "--family",
        "fsym",
        "--summary",
    ]);
    assert_eq!(stdout(&out), "center=perm:(0 1) n=2 constraints=6 exclusions=0");
}

#[test]
fn witness_pipes_into_verification() {
    let out = finrel(&["witness-neighborhood", "perm:(0 1)", "--n", "2", "--family", "fsym"]);
    let witness = stdout(&out);
    let out = finrel_stdin(
        &["verify", "--family", "fsym", "--window", "0..7", "--json"],
        &witness,
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["enumerated"], 29);
    assert_eq!(v["admitted"], 1);

    let out = finrel(&["witness-isolate", "perm:(0 1)", "--family", "frel"]);
    let witness = stdout(&out);
    let out = finrel_stdin(
        &["verify", "--isolation", "--family", "frel", "--window", "0..2"],
        &witness,
    );
    assert!(stdout(&out).starts_with("pass:"));
}

#[test]
fn an_unconstrained_witness_fails_verification_with_exit_one() {
    // No constraints at all: everything is admitted, including elements
    // whose support misses the center's.
    let bogus = r#"{"center":{"support":[0,1],"pairs":[[0,1],[1,0]]},"n":2,
        "commute_constraints":[],"exclusions":[],"trace":[]}"#;
    let out = finrel_stdin(&["verify", "--family", "fsym", "--window", "0..3"], bogus);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("fail:"), "got: {text}");
}

#[test]
fn audit_counting_passes_with_exit_zero() {
    let out = finrel(&[
        "audit", "--suite", "counting", "--family", "frel", "--window", "0..2", "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["suite"], "counting");
    assert_eq!(v["verdict"], "pass");
    assert_eq!(v["checked"], 512);

    let out = finrel(&["audit", "--suite", "fdc", "--family", "fsym", "--window", "0..4"]);
    let line = stdout(&out);
    assert!(line.contains("pass") && line.contains("checked 118"), "got: {line}");
}

#[test]
fn audit_accepts_explicit_targets() {
    let out = finrel(&[
        "audit",
        "--suite",
        "fdc",
        "--family",
        "fsym",
        "--window",
        "0..3",
        "--target",
        "perm:(1 2)",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "pass");
    // 24 permutations minus the two supported inside {1,2}.
    assert_eq!(v["checked"], 22);
}

#[test]
fn generated_families_load_from_a_file() {
    let dir = std::env::temp_dir().join("finrel-cli-gen-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("gens.txt");
    std::fs::write(&path, "perm:(0 1)\nperm:(1 2)\n").unwrap();
    let spec = format!("gen:{}", path.display());
    let out = finrel(&["enum", "--family", &spec, "--window", "0..2"]);
    assert_eq!(stdout(&out).lines().count(), 6);
}

#[test]
fn bad_inputs_exit_with_two() {
    let out = finrel(&["compose", "perm:(0 1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = finrel(&["enum", "--family", "frel", "--window", "0..9"]);
    assert_eq!(out.status.code(), Some(2));
    let out = finrel(&["audit", "--suite", "nope", "--family", "frel", "--window", "0..2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = finrel(&["enum", "--family", "frel"]);
    assert_eq!(out.status.code(), Some(2), "clap usage errors exit 2");
}
