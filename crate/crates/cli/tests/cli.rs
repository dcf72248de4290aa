//! End-to-end tests for the `ordlab` binary.
//!
//! The checked-in documents under `examples/` double as documentation:
//! every `examples/runs/<name>/` directory holds a command line (`args`,
//! one argument per line) and the exact bytes the tool must print
//! (`expected.json`). The remaining tests pin the exit-code contract and
//! a few outputs whose values are known by hand.

use std::fs;
use std::process::Command;

use serde_json::Value;

/// Runs the binary under test and returns `(exit code, stdout, stderr)`.
fn ordlab<S: AsRef<str>>(args: &[S]) -> (i32, String, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_ordlab"))
        .args(args.iter().map(|a| a.as_ref()))
        .output()
        .expect("binary runs");
    (
        output.status.code().expect("exit code"),
        String::from_utf8(output.stdout).expect("stdout is UTF-8"),
        String::from_utf8(output.stderr).expect("stderr is UTF-8"),
    )
}

fn parse(stdout: &str) -> Value {
    serde_json::from_str(stdout).expect("output is JSON")
}

#[test]
fn example_runs_reproduce_their_expected_output() {
    let mut checked = 0;
    for entry in fs::read_dir("examples/runs").expect("runs directory") {
        let dir = entry.expect("directory entry").path();
        let args: Vec<String> = fs::read_to_string(dir.join("args"))
            .expect("args file")
            .lines()
            .map(str::to_owned)
            .collect();
        let expected = fs::read_to_string(dir.join("expected.json")).expect("expected output");
        let (code, stdout, stderr) = ordlab(&args);
        assert_eq!(code, 0, "{}: {stderr}", dir.display());
        assert_eq!(stdout, expected, "{} drifted", dir.display());
        checked += 1;
    }
    assert!(checked >= 15, "only {checked} example runs found");
}

#[test]
fn output_is_byte_deterministic() {
    let args = ["probe", "condense", "--count", "2"];
    let (code, first, _) = ordlab(&args);
    assert_eq!(code, 0);
    let (_, second, _) = ordlab(&args);
    assert_eq!(first, second);
}

#[test]
fn emitted_documents_parse_back_as_input() {
    // A transported order is itself a valid order document...
    let dir = tempfile::tempdir().expect("tempdir");
    let transported = dir.path().join("transported.json");
    let (code, stdout, _) = ordlab(&[
        "act",
        "--order",
        "examples/plane-sqrt23.json",
        "--matrix",
        "examples/shear-2-1.json",
        "--out",
        transported.to_str().expect("path"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(fs::read_to_string(&transported).expect("file"), stdout);
    // The shear adds (2, -1) times the last coordinate, so the functional
    // (sqrt 2, sqrt 3, 1) transports to (sqrt 2 - 2, sqrt 3 + 1, 1).
    let (code, verdict, _) = ordlab(&[
        "classify",
        "--order",
        transported.to_str().expect("path"),
        "--point",
        "[1, 0, 0]",
    ]);
    assert_eq!(code, 0);
    assert_eq!(parse(&verdict)["verdict"], "negative");

    // ...and a conjugated group order feeds straight into orbit.
    let conjugated = dir.path().join("conjugated.json");
    let (code, _, _) = ordlab(&[
        "group",
        "conj",
        "--order",
        "examples/h3-order.json",
        "--by",
        "examples/h3-y.json",
        "--out",
        conjugated.to_str().expect("path"),
    ]);
    assert_eq!(code, 0);
    let (code, listing, _) = ordlab(&[
        "orbit",
        "--order",
        conjugated.to_str().expect("path"),
        "--radius",
        "0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(parse(&listing)["count"], 1);
}

#[test]
fn unreadable_or_malformed_input_exits_two() {
    // Truncated JSON.
    let (code, stdout, stderr) = ordlab(&["classify", "--order", "{\"rank\":", "--point", "[0]"]);
    assert_eq!(code, 2);
    assert!(stdout.is_empty());
    assert_eq!(parse(&stderr)["error"]["kind"], "schema");

    // Missing file.
    let (code, _, stderr) = ordlab(&["classify", "--order", "no/such/file.json", "--point", "[0]"]);
    assert_eq!(code, 2);
    assert_eq!(parse(&stderr)["error"]["kind"], "io");

    // Wrong schema tag on otherwise valid content.
    let tagged = r#"{"schema":"ordlab/9","rank":2,"radicands":[],"vectors":[[["1"],["1"]]]}"#;
    let (code, _, stderr) = ordlab(&["probe", "discrete", "--order", tagged]);
    assert_eq!(code, 2);
    assert!(parse(&stderr)["error"]["message"]
        .as_str()
        .expect("message")
        .contains("ordlab/9"));
}

#[test]
fn impossible_objects_exit_three() {
    // A rational kernel functional admits no condensation.
    let rational = r#"{"rank":3,"radicands":[],"vectors":[[["1"],["2"],["3"]]]}"#;
    let (code, stdout, stderr) = ordlab(&["probe", "condense", "--kernel", rational]);
    assert_eq!(code, 3);
    assert!(stdout.is_empty());
    let error = parse(&stderr);
    assert_eq!(error["error"]["kind"], "domain");
    assert!(error["error"]["message"]
        .as_str()
        .expect("message")
        .contains("rationally dependent"));

    // Lattice transport does not apply to group orders.
    let (code, _, stderr) = ordlab(&[
        "act",
        "--order",
        "examples/h3-order.json",
        "--matrix",
        "examples/shear-2-1.json",
    ]);
    assert_eq!(code, 3);
    assert!(parse(&stderr)["error"]["message"]
        .as_str()
        .expect("message")
        .contains("group conj"));

    // Conjugator names must exist in the group.
    let (code, _, stderr) = ordlab(&[
        "orbit",
        "--order",
        "examples/h3-order.json",
        "--radius",
        "2",
        "--generators",
        "q7",
    ]);
    assert_eq!(code, 3);
    assert!(parse(&stderr)["error"]["message"]
        .as_str()
        .expect("message")
        .contains("q7"));
}

#[test]
fn axiom_violations_exit_four_with_the_report_on_stdout() {
    let (code, stdout, _) = ordlab(&[
        "axioms",
        "--order",
        "examples/z3-identity.json",
        "--radius",
        "3",
        "--flip",
        "[1, 0, 0]",
    ]);
    assert_eq!(code, 4);
    let report = parse(&stdout);
    assert_eq!(report["passed"], false);
    assert!(!report["violations"].as_array().expect("array").is_empty());

    // Without the corruption the same check passes, and radius 0 is
    // vacuously fine.
    let (code, stdout, _) = ordlab(&["axioms", "--order", "examples/z3-identity.json", "--radius", "3"]);
    assert_eq!(code, 0);
    assert_eq!(parse(&stdout)["passed"], true);
    let (code, stdout, _) = ordlab(&["axioms", "--order", "examples/z3-identity.json", "--radius", "0"]);
    assert_eq!(code, 0);
    assert_eq!(parse(&stdout)["points"], 0);
}

#[test]
fn discreteness_witnesses_match_the_hand_checked_pair() {
    let (code, stdout, _) = ordlab(&["probe", "discrete", "--order", "examples/line-z2.json"]);
    assert_eq!(code, 0);
    let certificate = parse(&stdout);
    assert_eq!(
        certificate["witnesses"],
        serde_json::json!([["-2", "3"], ["2", "-1"]])
    );
    // Every logged shear in the box is excluded by one of them.
    for entry in certificate["log"].as_array().expect("log") {
        assert_eq!(entry["outcome"], "excluded");
    }
}

#[test]
fn condensation_pairs_shrink_into_the_quarter_neighborhood() {
    let (code, stdout, _) = ordlab(&["probe", "condense", "--count", "2"]);
    assert_eq!(code, 0);
    let sequence = parse(&stdout);
    let samples = sequence["samples"].as_array().expect("samples");
    assert_eq!(samples.len(), 2);
    // The radius-1 ball constrains nothing, so the first admissible pair
    // wins; the radius-2 ball forces the shrinking bound 1/4.
    assert_eq!((samples[0]["k0"].as_i64(), samples[0]["t0"].as_i64()), (Some(-1), Some(-1)));
    assert!(samples[0]["epsilon"].is_null());
    assert_eq!((samples[1]["k0"].as_i64(), samples[1]["t0"].as_i64()), (Some(-5), Some(4)));
    assert_eq!(samples[1]["epsilon"], "1/4");
}
