//! The `pasep` binary: outputs, exit codes, CSV layout and coverage.

use std::collections::BTreeSet;
use std::process::{Command, Output};

use pasep::closedforms;
use pasep::exactpoly::binomial;

fn pasep(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pasep"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_column(o: &Output) -> Vec<String> {
    stdout(o)
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().to_string())
        .collect()
}

#[test]
fn eval_prints_the_polynomial() {
    let o = pasep(&["eval", "--method", "theorem1", "-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "y^3 + (3 + q)*y^2 + y\n");

    let o = pasep(&[
        "eval", "--method", "matrix", "-n", "3", "--q", "0", "--y", "1",
    ]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "5"));

    let o = pasep(&["eval", "--method", "rooks", "-n", "4", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(doc["method"], "rooks");
    let value: pasep::LaurentPoly = serde_json::from_value(doc["value"].clone()).unwrap();
    assert_eq!(value, closedforms::theorem1(4).unwrap().value);
}

#[test]
fn every_method_prints_the_same_polynomial() {
    let methods = [
        "matrix",
        "motzkin",
        "signed-paths",
        "rooks",
        "theorem1",
        "williams",
        "permutations-ascent",
        "permutations-crossing",
    ];
    let outputs: BTreeSet<String> = methods
        .iter()
        .map(|m| {
            stdout(&pasep(&[
                "eval", "--method", m, "-n", "6", "--format", "json",
            ]))
        })
        .map(|s| s.replace(&s[..s.find(',').unwrap()], ""))
        .collect();
    assert_eq!(outputs.len(), 1, "{outputs:?}");
}

#[test]
fn rational_specializations() {
    let o = pasep(&["eval", "-n", "2", "--q", "1/2", "--y", "-1"]);
    assert_eq!(stdout(&o).trim(), "0");
    let o = pasep(&["eval", "-n", "3", "--y", "2", "--format", "csv"]);
    assert_eq!(stdout(&o), "n,q,y,coeff\n3,0,0,22\n3,1,0,4\n");
}

#[test]
fn exit_codes() {
    assert_eq!(
        pasep(&["eval", "--method", "permutations-ascent", "-n", "10"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        pasep(&["eval", "--method", "rooks", "-n", "13"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        pasep(&["eval", "--method", "nope", "-n", "3"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(pasep(&["eval", "-n", "x"]).status.code(), Some(2));
    assert_eq!(pasep(&["eval", "-n", "0"]).status.code(), Some(2));
    assert_eq!(
        pasep(&["eval", "-n", "3", "--q", "1/0"]).status.code(),
        Some(2)
    );
    assert_eq!(pasep(&["table", "8..1"]).status.code(), Some(2));
    assert_eq!(
        pasep(&["table", "1..3", "--coeff", "z1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        pasep(&["crosscheck", "--n-max", "10"]).status.code(),
        Some(3)
    );
    assert_eq!(pasep(&["frobnicate"]).status.code(), Some(2));
    let help = pasep(&["eval", "--help"]);
    assert_eq!(help.status.code(), Some(0));
    assert!(stdout(&help).contains("permutations-ascent 9"));
}

#[test]
fn q1_column_is_a_binomial() {
    let o = pasep(&["table", "1..8", "--coeff", "q1"]);
    assert_eq!(o.status.code(), Some(0));
    let expected: Vec<String> = (1..=8)
        .map(|n| binomial(2 * n, n - 3).to_string())
        .collect();
    assert_eq!(csv_column(&o), expected);
    assert!(stdout(&o).starts_with("n,q1\n"));
}

#[test]
fn q10_column_matches_the_closed_formula() {
    let o = pasep(&["table", "8..12", "--coeff", "q10"]);
    let expected: Vec<String> = (8..=12)
        .map(|n| closedforms::q10_coefficient(n).unwrap().to_string())
        .collect();
    assert_eq!(csv_column(&o), expected);
}

#[test]
fn q0_column_is_catalan() {
    let o = pasep(&["table", "1..6", "--coeff", "q0"]);
    assert_eq!(csv_column(&o), ["1", "2", "5", "14", "42", "132"]);
}

#[test]
fn full_table_layout() {
    let o = pasep(&["table", "--range", "2..4"]);
    let text = stdout(&o);
    assert!(!text.contains('\r'));
    assert_eq!(text, "n,q0,q1,q2\n2,2,0,0\n3,5,1,0\n4,14,8,2\n");
    let o = pasep(&["table", "3..3", "--coeff", "q1y2"]);
    assert_eq!(stdout(&o), "n,q1y2\n3,1\n");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["crosscheck", "--n-max", "4"][..],
        &["table", "1..7"][..],
        &[
            "eval",
            "--range",
            "1..6",
            "--method",
            "permutations-crossing",
            "--format",
            "json",
        ][..],
    ] {
        let a = pasep(args);
        let b = pasep(&[&["--threads", "1"][..], args].concat());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
    assert_eq!(
        pasep(&["eval", "-n", "4", "--seed", "7"]).status.code(),
        Some(0)
    );
}

#[test]
fn crosscheck_passes_and_reports_json() {
    let o = pasep(&["crosscheck", "--n-max", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(r["passed"], true);
    assert!(r["first_failure"].is_null());
    assert!(r["williams_indexing"].as_str().unwrap().contains("y^m"));
}

#[test]
fn injected_williams_offset_is_caught() {
    let o = pasep(&[
        "crosscheck",
        "--n-max",
        "5",
        "--inject-fault",
        "williams-offset",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("williams_E vs theorem1"), "{err}");
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(r["first_failure"]
        .as_str()
        .unwrap()
        .starts_with("williams_E vs theorem1"));
}

/// Every operation of every module, as `module::operation`.
const OPERATIONS: &[&str] = &[
    "exactpoly::add",
    "exactpoly::mul",
    "exactpoly::exact_div",
    "exactpoly::binomial",
    "exactpoly::q_binomial",
    "exactpoly::q_int",
    "exactpoly::coeff",
    "exactpoly::coeff_y",
    "exactpoly::eval_q",
    "ansatz::build_D",
    "ansatz::build_E",
    "ansatz::build_hat",
    "ansatz::scalar_product",
    "ansatz::verify_ansatz",
    "ansatz::verify_hat_relations",
    "ansatz::verify_inversion",
    "paths::motzkin_polynomial",
    "paths::enumerate_P",
    "paths::enumerate_M_signed",
    "paths::decompose",
    "paths::count_left_factors",
    "paths::lgv_bijection",
    "paths::m_k_closed",
    "paths::check_functional_equation",
    "rooks::weight",
    "rooks::rook_sum",
    "rooks::phi",
    "rooks::T",
    "rooks::check_factorization",
    "rooks::T0_recurrence",
    "rooks::T0_closed",
    "rooks::row_sum_formula",
    "rooks::g_polynomial",
    "rooks::reconcile_g_identity",
    "closedforms::theorem1",
    "closedforms::corollary",
    "closedforms::williams_E",
    "closedforms::touchard_riordan",
    "closedforms::taylor_low_order",
    "closedforms::q10_coefficient",
    "closedforms::narayana_check",
    "closedforms::low_q_y_coefficients",
    "closedforms::asymptotic_ratio",
    "closedforms::corollary_bound",
    "permstats::ascents",
    "permstats::pattern_13_2",
    "permstats::weak_exceedances",
    "permstats::crossings",
    "permstats::gen_polynomial",
    "permstats::classical_132_count",
    "permstats::psi",
    "permstats::matching_crossings",
    "cli::cmd_eval",
    "cli::cmd_crosscheck",
    "cli::cmd_table",
];

#[test]
fn every_operation_is_reachable_from_a_verb() {
    let o = pasep(&["crosscheck", "--n-max", "6"]);
    let r: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let mut covered: BTreeSet<String> = r["covered_operations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    covered.extend(pasep::cli::EVAL_OPERATIONS.iter().map(|s| s.to_string()));
    let missing: Vec<_> = OPERATIONS
        .iter()
        .filter(|op| !covered.contains(**op))
        .collect();
    assert!(missing.is_empty(), "unreachable operations: {missing:?}");
}
