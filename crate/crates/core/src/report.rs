//! Serializable reports. Field order and entry order are fixed, so equal
//! inputs give byte-identical JSON.

use serde::Serialize;

use crate::expr::OperatorExpr;
use crate::wick::LaurentOPE;

/// How many residual terms a failed report quotes.
pub const WITNESS_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermReport {
    pub coeff: String,
    pub monomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoleReport {
    pub pole_z: u32,
    pub pole_zbar: u32,
    pub terms: Vec<TermReport>,
}

pub fn expr_terms(e: &OperatorExpr) -> Vec<TermReport> {
    e.terms().map(|(m, c)| TermReport { coeff: c.to_string(), monomial: m.to_string() }).collect()
}

/// Pole entries, highest orders first.
pub fn ope_report(l: &LaurentOPE) -> Vec<PoleReport> {
    let mut out: Vec<PoleReport> =
        l.entries().map(|(&(p, q), e)| PoleReport { pole_z: p, pole_zbar: q, terms: expr_terms(e) }).collect();
    out.reverse();
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Verified,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub status: Status,
    pub lhs_minus_rhs_term_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_terms: Option<Vec<String>>,
}

impl VerificationReport {
    /// A claim of the form `lhs - rhs = 0` with the given difference.
    pub fn from_residual(claim: impl Into<String>, residual: &OperatorExpr) -> Self {
        let count = residual.len();
        VerificationReport {
            claim: claim.into(),
            status: if count == 0 { Status::Verified } else { Status::Failed },
            lhs_minus_rhs_term_count: count,
            witness_terms: (count > 0).then(|| {
                residual
                    .terms()
                    .take(WITNESS_LIMIT)
                    .map(|(m, c)| OperatorExpr::product(m.factors().to_vec(), m.deltas().to_vec(), c.clone()))
                    .map(|e| e.map(|e| e.to_string()).unwrap_or_default())
                    .collect()
            }),
        }
    }

    /// A claim checked by comparing two rendered values; a mismatch counts
    /// as one residual term quoting both sides.
    pub fn from_comparison(claim: impl Into<String>, found: &str, expected: &str) -> Self {
        let ok = found == expected;
        VerificationReport {
            claim: claim.into(),
            status: if ok { Status::Verified } else { Status::Failed },
            lhs_minus_rhs_term_count: usize::from(!ok),
            witness_terms: (!ok).then(|| vec![format!("found {found}, expected {expected}")]),
        }
    }

    pub fn from_bool(claim: impl Into<String>, ok: bool) -> Self {
        VerificationReport {
            claim: claim.into(),
            status: if ok { Status::Verified } else { Status::Failed },
            lhs_minus_rhs_term_count: usize::from(!ok),
            witness_terms: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Verified
    }
}
