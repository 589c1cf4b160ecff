//! End-to-end checks of the command-line interface: output contracts,
//! exit codes and JSON determinism.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kummerlat")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

#[test]
fn report_json_is_clean_and_deterministic() {
    let first = run(&["--json", "report"]);
    assert_eq!(first.status.code(), Some(0));
    let second = run(&["--json", "report"]);
    assert_eq!(stdout(&first), stdout(&second), "JSON output must be byte-identical");

    let doc: serde_json::Value = serde_json::from_str(&stdout(&first)).expect("valid JSON");
    let claims = doc["claims"].as_array().expect("claims array");
    assert!(claims.iter().all(|c| c["status"] != "mismatch"));
    assert!(claims.iter().all(|c| !c["location"].as_str().unwrap().is_empty()));

    let defects: Vec<&str> = ["defect-s1", "defect-s12", "defect-s123", "defect-s1234"]
        .iter()
        .map(|id| {
            claims
                .iter()
                .find(|c| c["id"] == *id)
                .expect("defect claim present")["computed"]
                .as_str()
                .unwrap()
        })
        .collect();
    assert_eq!(defects, vec!["1", "2", "8", "64"]);

    let census = claims.iter().find(|c| c["id"] == "kummer-census").unwrap();
    assert!(census["computed"].as_str().unwrap().contains("q0 = 35"));
    assert!(census["computed"].as_str().unwrap().contains("q1 = 28"));
}

#[test]
fn report_text_mode_prints_claim_lines() {
    let out = run(&["report"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("k3-model"));
    assert!(text.contains("reported-only"));
    assert!(!text.contains("MISMATCH"));
}

#[test]
fn fixed_defect_values() {
    for (group, expect) in [("1", "1\n"), ("1,2", "2\n"), ("1,2,3", "8\n"), ("1,2,3,4", "64\n")] {
        let out = run(&["fixed", "--group", group, "--defect"]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out), expect);
    }
}

#[test]
fn fixed_summary_of_full_group() {
    let out = run(&["fixed", "--group", "1,2,3,4", "--format", "summary"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("rank         7"));
    assert!(text.contains("determinant  512"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["fixed", "--group", "5"]).status.code(), Some(2));
    assert_eq!(run(&["fixed", "--group", "bogus"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "1", "--degree", "3"]).status.code(), Some(2));
    assert_eq!(run(&["cohomology", "2,4", "--degree", "3", "--v-table"]).status.code(), Some(0));
    assert_eq!(run(&["cohomology", "5,5", "--degree", "3", "--v-table"]).status.code(), Some(2));
    assert_eq!(run(&["lattice", "Q"]).status.code(), Some(2));
    assert_eq!(run(&["lattice", "U(0)"]).status.code(), Some(2));
    assert_eq!(run(&["nonsense"]).status.code(), Some(2));
}

#[test]
fn cohomology_output_strings() {
    let out = run(&["cohomology", "2,2,2", "--degree", "3"]);
    assert_eq!(stdout(&out), "(Z/2)^3\n");
    let out = run(&["cohomology", "3", "--degree", "0"]);
    assert_eq!(stdout(&out), "Z\n");
    let out = run(&["--json", "cohomology", "2,4", "--degree", "3", "--v-table"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(doc["value"], "Z/2");
    assert_eq!(doc["v_table"]["tabulated"], "Z/4");
    assert_eq!(doc["v_table"]["agrees"], false);
}

#[test]
fn kummer_census_output() {
    let out = run(&["--json", "kummer", "--census"]);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(doc["zero"], 1);
    assert_eq!(doc["q0"], 35);
    assert_eq!(doc["q1"], 28);
}

#[test]
fn lattice_inspection() {
    let out = run(&["lattice", "U(1)", "--format", "gram"]);
    assert_eq!(stdout(&out), "[0, 1]\n[1, 0]\n");
    let out = run(&["lattice", "U+U+U+E8(-1)+E8(-1)"]);
    let text = stdout(&out);
    assert!(text.contains("rank         22"));
    assert!(text.contains("signature    (3,19,0)"));
    assert!(text.contains("unimodular   true"));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));
}
