//! Every JSON report validates against its schema under docs/schema.

use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn schema(name: &str) -> Value {
    let path: PathBuf =
        [env!("CARGO_MANIFEST_DIR"), "..", "..", "docs", "schema", &format!("{name}.schema.json")].iter().collect();
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn json_output(args: &[&str]) -> Value {
    let out = Command::new(env!("CARGO_BIN_EXE_superspin")).arg("--format").arg("json").args(args).output().unwrap();
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

fn assert_valid(name: &str, args: &[&str]) {
    let validator = jsonschema::validator_for(&schema(name)).unwrap();
    let instance = json_output(args);
    let errors: Vec<String> = validator.iter_errors(&instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?} against {name}: {errors:?}");
}

#[test]
fn ope_reports() {
    assert_valid("ope", &["ope", "psi(-,i)", "psi(+,j)"]);
    assert_valid("ope", &["ope", "T_gl11", "S+"]);
    assert_valid("ope", &["ope", "psi(+,i)", "psi(+,j)"]);
}

#[test]
fn verification_reports() {
    assert_valid("report", &["verify", "all"]);
    assert_valid("report", &["verify", "sp-numeric", "--n", "1"]);
    assert_valid("report", &["oracle", "completeness", "so", "--n", "3"]);
}

#[test]
fn other_reports() {
    assert_valid("dos-table", &["dos-table", "--eval", "1,2,3"]);
    assert_valid("beta", &["beta", "su"]);
    assert_valid("weights", &["weights", "su", "--field", "beta"]);
    assert_valid("central-charge", &["central-charge", "osp22"]);
    assert_valid("parse", &["parse", "(1/(2*N^2))*no(beta(+,i), psi(-,i), beta(-,j), psi(+,j))"]);
}

#[test]
fn failed_report_shape_is_rejected_when_inconsistent() {
    let validator = jsonschema::validator_for(&schema("report")).unwrap();
    let bad = serde_json::json!([{ "claim": "x", "status": "verified", "lhs_minus_rhs_term_count": 3 }]);
    assert!(!validator.is_valid(&bad));
    let good = serde_json::json!([{ "claim": "x", "status": "failed", "lhs_minus_rhs_term_count": 1, "witness_terms": ["psi(+,i)"] }]);
    assert!(validator.is_valid(&good));
}
