use crate::expr::{ExprError, OperatorExpr};
use crate::scalars::ScalarError;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("double pole is not proportional to the field: {double_pole}")]
    NotPrimary { double_pole: OperatorExpr },
    #[error("kinetic coefficients disagree: {found:?}")]
    InconsistentKinetic { found: Vec<String> },
    #[error("residue lies outside the operator basis: {residue}")]
    OutsideBasis { residue: OperatorExpr },
    #[error(transparent)]
    Parse(#[from] crate::dsl::ParseError),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
