//! Python module `superspin`. Expressions cross the boundary as DSL text and
//! rational functions of `N` as their canonical strings.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use superspin::algebras::Family;
use superspin::expr::OperatorExpr;
use superspin::scalars::{RatN, Rational};
use superspin::sugawara::{self, StressLabel};
use superspin::{dsl, oracle, wick};

fn py_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn family(name: &str) -> PyResult<Family> {
    name.parse().map_err(py_err)
}

fn label(name: &str) -> PyResult<StressLabel> {
    name.parse().map_err(py_err)
}

fn expr(src: &str) -> PyResult<OperatorExpr> {
    dsl::parse(src).map_err(py_err)
}

/// Canonical DSL text of an expression.
#[pyfunction]
fn parse(src: &str) -> PyResult<String> {
    Ok(expr(src)?.to_string())
}

#[pyfunction]
fn to_latex(src: &str) -> PyResult<String> {
    Ok(dsl::to_latex(&expr(src)?))
}

/// Laurent entries of `a(z) b(w)` as `(pole_z, pole_zbar, coefficient)`,
/// highest poles first.
#[pyfunction]
#[pyo3(signature = (a, b, depth = 2))]
fn ope(a: &str, b: &str, depth: u32) -> PyResult<Vec<(u32, u32, String)>> {
    let l = wick::ope(&expr(a)?, &expr(b)?, depth).map_err(py_err)?;
    Ok(l.entries().rev().map(|(&(p, q), e)| (p, q, e.to_string())).collect())
}

/// A stress tensor (`free`, `su0`, `so0`, `gl11`, `osp22`) as DSL text.
#[pyfunction]
fn stress_tensor(name: &str) -> PyResult<String> {
    Ok(sugawara::build_t(label(name)?).map_err(py_err)?.expr.to_string())
}

/// Number of terms left in `T_free - T_super - T_level0`.
#[pyfunction]
fn decomposition_residual(family_name: &str) -> PyResult<usize> {
    Ok(sugawara::decomposition_residual(family(family_name)?).map_err(py_err)?.len())
}

#[pyfunction]
fn verify(family_name: &str) -> PyResult<bool> {
    Ok(decomposition_residual(family_name)? == 0)
}

#[pyfunction]
fn verify_sp_numeric(n: usize) -> PyResult<bool> {
    oracle::numeric_verify_sp(n).map_err(py_err)
}

#[pyfunction]
fn central_charge(name: &str) -> PyResult<String> {
    let t = sugawara::build_t(label(name)?).map_err(py_err)?;
    Ok(sugawara::central_charge(&t).map_err(py_err)?.to_string())
}

#[pyfunction]
fn conformal_weight(name: &str, field: &str) -> PyResult<String> {
    let t = sugawara::build_t(label(name)?).map_err(py_err)?;
    Ok(sugawara::conformal_weight(&t, &expr(field)?).map_err(py_err)?.to_string())
}

/// `{"kappa", "gamma", "nu"}` for a family.
#[pyfunction]
fn dos(family_name: &str) -> PyResult<BTreeMap<String, String>> {
    let d = sugawara::dos_exponents(family(family_name)?).map_err(py_err)?;
    Ok(BTreeMap::from([
        ("kappa".to_string(), d.kappa.to_string()),
        ("gamma".to_string(), d.gamma.to_string()),
        ("nu".to_string(), d.nu.to_string()),
    ]))
}

/// The beta functions rendered one per line.
#[pyfunction]
fn beta(family_name: &str) -> PyResult<String> {
    Ok(sugawara::beta_one_loop(family(family_name)?).map_err(py_err)?.render())
}

/// Coefficient of `g_i g_j` in `beta_k`.
#[pyfunction]
fn beta_coefficient(family_name: &str, k: &str, i: &str, j: &str) -> PyResult<String> {
    let sys = sugawara::beta_one_loop(family(family_name)?).map_err(py_err)?;
    for c in [k, i, j] {
        if sys.index(c).is_none() {
            return Err(py_err(format!("unknown coupling `{c}`")));
        }
    }
    Ok(sys.beta_coefficient(k, i, j).to_string())
}

/// A rational function of `N` evaluated at an integer, as `p/q`.
#[pyfunction]
fn evaluate(value: &str, n: i64) -> PyResult<String> {
    let v: RatN = value.parse().map_err(py_err)?;
    Ok(v.eval(&Rational::from_integer(n.into())).map_err(py_err)?.to_string())
}

/// Every oracle check as `(claim, passed)`.
#[pyfunction]
fn oracle_suite() -> PyResult<Vec<(String, bool)>> {
    Ok(oracle::full_oracle_suite().map_err(py_err)?.into_iter().map(|c| (c.claim, c.passed)).collect())
}

#[pymodule]
#[pyo3(name = "superspin")]
fn superspin_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(parse, m)?)?;
    m.add_function(wrap_pyfunction!(to_latex, m)?)?;
    m.add_function(wrap_pyfunction!(ope, m)?)?;
    m.add_function(wrap_pyfunction!(stress_tensor, m)?)?;
    m.add_function(wrap_pyfunction!(decomposition_residual, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(verify_sp_numeric, m)?)?;
    m.add_function(wrap_pyfunction!(central_charge, m)?)?;
    m.add_function(wrap_pyfunction!(conformal_weight, m)?)?;
    m.add_function(wrap_pyfunction!(dos, m)?)?;
    m.add_function(wrap_pyfunction!(beta, m)?)?;
    m.add_function(wrap_pyfunction!(beta_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(oracle_suite, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wrappers_without_interpreter() {
        assert_eq!(parse("no(psi(-,i), psi(+,i))").unwrap(), "-no(psi(+,i), psi(-,i))");
        assert!(verify("su").unwrap());
        assert_eq!(dos("su").unwrap()["nu"], "1/(2*N^2 - 1)");
        assert_eq!(evaluate("1/(4*N + 3)", 1).unwrap(), "1/7");
        assert_eq!(ope("psi(-,i)", "psi(+,j)", 1).unwrap()[0], (1, 0, "delta(i,j)".to_string()));
    }
}
