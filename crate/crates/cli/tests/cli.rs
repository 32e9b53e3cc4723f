use std::process::{Command, Output};

fn superspin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_superspin")).args(args).env_remove("SUPERSPIN_DEPTH").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn verify_all_reports_both_decompositions() {
    let o = superspin(&["verify", "all"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("verified: T_free = T_gl11 + T_su0"));
    assert!(s.contains("verified: T_free = T_osp22 + T_so0"));
}

#[test]
fn verify_json_is_deterministic() {
    let a = superspin(&["--format", "json", "verify", "all"]);
    let b = superspin(&["--format", "json", "verify", "all"]);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(v[1]["status"], "verified");
    assert!(v[1].get("witness_terms").is_none());
}

#[test]
fn verify_sp_numeric() {
    let o = superspin(&["verify", "sp-numeric", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("coincide with su(2)"));
    assert_eq!(superspin(&["verify", "sp-numeric", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn dos_table_rows() {
    let o = superspin(&["dos-table"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("1/(2*N^2 - 1)"));
    assert!(s.contains("1/(4*N + 3)"));
    let o = superspin(&["dos-table", "--eval", "2"]);
    let su = stdout(&o).lines().find(|l| l.starts_with("su")).unwrap().to_string();
    assert!(su.ends_with("nu(N=2)=1/7"), "{su}");
}

#[test]
fn dos_table_json_evaluations() {
    let o = superspin(&["--format", "json", "dos-table", "--eval", "1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[1]["family"], "so");
    assert_eq!(v[1]["evaluations"][0]["nu"], "1");
    let o = superspin(&["dos-table", "--eval", "0"]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("su") && l.contains("nu(N=0)=-1")));
}

#[test]
fn ope_text_and_json() {
    let o = superspin(&["ope", "psi(-,i)", "psi(+,j)"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("(z-w)^-1: delta(i,j)\n"));
    let o = superspin(&["--format", "json", "ope", "psi(-,i)", "psi(+,j)"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["poles"][0]["pole_z"], 1);
    assert_eq!(v["poles"][0]["terms"][0]["coeff"], "1");
    assert_eq!(v["depth"], 2);
}

#[test]
fn ope_depth_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_superspin"))
        .args(["--format", "json", "ope", "H", "J"])
        .env("SUPERSPIN_DEPTH", "5")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["depth"], 5);
}

#[test]
fn ope_of_named_operators() {
    let o = superspin(&["ope", "T_free", "psi(+,i)"]);
    let s = stdout(&o);
    assert!(s.contains("(z-w)^-2: (1/2)*psi(+,i)"), "{s}");
    assert!(s.contains("(z-w)^-1: d(psi(+,i))"), "{s}");
}

#[test]
fn ope_latex() {
    let o = superspin(&["--format", "latex", "ope", "beta(+,i)", "beta(-,j)"]);
    assert!(stdout(&o).starts_with("\\frac{\\delta_{ij}}{(z-w)}"), "{}", stdout(&o));
}

#[test]
fn parse_errors_exit_two() {
    let o = superspin(&["parse", "no(psi(+,i), psi(+,i), psi(+,i))"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("3 times"));
    let o = superspin(&["ope", "psi(*,i)", "psi(+,i)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(superspin(&["central-charge", "e8"]).status.code(), Some(2));
    assert_eq!(superspin(&["verify"]).status.code(), Some(2));
    assert_eq!(superspin(&["weights", "sp", "--field", "psi"]).status.code(), Some(2));
    assert_eq!(superspin(&["oracle", "completeness", "su", "--n", "9"]).status.code(), Some(2));
    assert_eq!(superspin(&["--format", "latex", "beta", "su"]).status.code(), Some(2));
}

#[test]
fn central_charges_vanish() {
    for label in ["free", "gl11", "su0"] {
        let o = superspin(&["central-charge", label]);
        assert_eq!(stdout(&o).trim(), "0", "{label}");
    }
}

#[test]
fn weights_are_additive() {
    let o = superspin(&["weights", "so", "--field", "psi"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("osp22 -1/(2*N - 4)"));
    assert!(s.contains("so0 (N - 1)/(2*N - 4)"));
    assert!(s.lines().all(|l| l.ends_with("additive yes")));
}

#[test]
fn beta_systems() {
    let s = stdout(&superspin(&["beta", "so"]));
    assert_eq!(s.trim(), "beta_g = (2*N - 4)*g^2\nbeta_g' = -4*g'^2");
    let o = superspin(&["--format", "json", "beta", "su"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["beta"][0]["terms"][0]["coefficient"], "2*N");
    assert_eq!(v["beta"][1]["terms"].as_array().unwrap().len(), 0);
}

#[test]
fn oracle_completeness() {
    let o = superspin(&["oracle", "completeness", "sp", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verified: sp(4): completeness relation"));
}
