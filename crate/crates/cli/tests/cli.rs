//! End-to-end tests of the `qspace` binary: worked examples, output
//! formats, and exit codes.

use std::process::{Command, Output};

fn qspace(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qspace"))
        .args(args)
        .output()
        .expect("binary should run")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn star_reproduces_the_exchange_relation() {
    let out = qspace(&[
        "star",
        "--algebra",
        "plane",
        "--ordering",
        "normal",
        "y",
        "x",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "e(-1)*x*y");
}

#[test]
fn the_unit_is_neutral() {
    let out = qspace(&["star", "1", "x^3 + 2*x*y"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "x^3 + 2*x*y");
}

#[test]
fn sympres_star_products_mix_matrix_entries() {
    let out = qspace(&[
        "star",
        "--algebra",
        "m2",
        "--ordering",
        "sympres",
        "--order",
        "4",
        "a",
        "d",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "a*d + (h - 1/3*h^3)*b*c");
}

#[test]
fn json_star_output_carries_exact_coefficients() {
    let out = qspace(&["star", "--format", "json", "--order", "3", "y", "x"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["ordering"], "normal");
    assert_eq!(v["result"]["algebra"], "plane-classical");
    let terms = v["result"]["terms"].as_array().unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!(terms[0]["monomial"], "x*y");
    assert_eq!(terms[0]["exponents"], serde_json::json!([1, 1]));
    let coeff = qspace::HSeries::from_json(&terms[0]["coefficient"]).unwrap();
    assert_eq!(coeff, qspace::hexp_int(-1, 3));
}

#[test]
fn verify_suite_passes_and_prints_per_check_lines() {
    let out = qspace(&["verify", "cg", "--max-degree", "1", "--order", "2"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("suite cg"), "{text}");
    assert!(text.contains("PASS"), "{text}");
    assert!(!text.contains("FAIL"), "{text}");
}

#[test]
fn verify_emits_json_reports() {
    let out = qspace(&[
        "verify",
        "rigidity-plane",
        "--max-degree",
        "2",
        "--order",
        "3",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["suite"], "rigidity-plane");
    assert_eq!(reports[0]["passed"], true);
    assert!(!reports[0]["checks"].as_array().unwrap().is_empty());
}

#[test]
fn verify_all_runs_every_suite() {
    let out = qspace(&["verify", "--order", "2", "--max-degree", "1"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    for suite in [
        "requal",
        "rigidity-plane",
        "rigidity-m2",
        "cg",
        "product-formula",
        "invariants",
    ] {
        assert!(
            text.contains(&format!("suite {suite}")),
            "missing {suite}: {text}"
        );
    }
}

#[test]
fn unknown_suites_and_bad_expressions_are_usage_errors() {
    assert_eq!(code(&qspace(&["verify", "nope"])), 2);
    assert_eq!(code(&qspace(&["star", "x +", "y"])), 2);
    assert_eq!(code(&qspace(&["star", "a", "b"])), 2); // not plane generators
    assert_eq!(code(&qspace(&["cg", "x", "1"])), 2);
    assert_eq!(code(&qspace(&["order-map", "fwd"])), 2); // no expression
    assert_eq!(code(&qspace(&["star", "--order", "0", "x", "y"])), 2);
}

#[test]
fn oversized_products_fail_with_a_computation_error() {
    let out = qspace(&["star", "--order", "2", "x^8*y^8", "x^8"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn cg_prints_both_variants_and_degenerate_tables_are_identities() {
    let out = qspace(&["cg", "1/2", "1/2", "--order", "3"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("deformed:"), "{text}");
    assert!(text.contains("undeformed:"), "{text}");
    assert!(text.contains("j = 0"), "{text}");
    assert!(text.contains("j = 1"), "{text}");

    // Coupling anything with spin 0 is trivial.
    let out = qspace(&["cg", "0", "1", "--order", "3"]);
    assert_eq!(code(&out), 0);
    for line in stdout(&out).lines().filter(|l| l.contains("formed:")) {
        let value = line.split(':').nth(1).unwrap().trim();
        assert_eq!(value, "1", "{line}");
    }
}

#[test]
fn cg_json_lists_couplings_with_series_values() {
    let out = qspace(&["cg", "1/2", "1/2", "--order", "2", "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["j1"], "1/2");
    let couplings = v["couplings"].as_array().unwrap();
    assert_eq!(couplings.len(), 6);
    for c in couplings {
        assert!(qspace::HSeries::from_json(&c["deformed"]).is_ok());
        assert!(qspace::HSeries::from_json(&c["undeformed"]).is_ok());
    }
}

#[test]
fn order_map_round_trips_expressions() {
    for (algebra, ordering, expr) in [
        ("plane", "sympres", "x^2*y"),
        ("plane", "symmetric", "x*y^2"),
        ("m2", "normal", "a*b*c"),
        ("m2", "sympres", "a*d"),
    ] {
        let fwd = qspace(&[
            "order-map",
            "fwd",
            expr,
            "--algebra",
            algebra,
            "--ordering",
            ordering,
            "--order",
            "4",
        ]);
        assert_eq!(code(&fwd), 0);
        let image = stdout(&fwd);
        let inv = qspace(&[
            "order-map",
            "inv",
            image.trim(),
            "--algebra",
            algebra,
            "--ordering",
            ordering,
            "--order",
            "4",
        ]);
        assert_eq!(code(&inv), 0);
        assert_eq!(stdout(&inv).trim(), expr, "{algebra} {ordering}");
    }
}

#[test]
fn order_map_reads_off_the_exchange_relations() {
    let out = qspace(&[
        "order-map",
        "inv",
        "y*x",
        "--ordering",
        "normal",
        "--order",
        "4",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out).trim(), "e(-1)*x*y");
}

#[test]
fn order_map_dumps_graded_matrices_as_json() {
    let out = qspace(&[
        "order-map",
        "fwd",
        "--matrix",
        "2",
        "--ordering",
        "sympres",
        "--order",
        "3",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["ordering"], "sympres");
    assert_eq!(v["algebra"], "plane");
    assert_eq!(v["forward"]["dim"], 3);
    assert_eq!(v["inverse"]["dim"], 3);
    let labels: Vec<&str> = v["forward"]["basis"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b["label"].as_str().unwrap())
        .collect();
    assert_eq!(labels, vec!["x^2", "x*y", "y^2"]);
}
