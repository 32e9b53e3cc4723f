//! Normal-ordered composite operators of the free fields.
//!
//! Every expression is kept flat: a sum of normal-ordered monomials with
//! Kronecker deltas and Einstein-summed flavor indices. Equality of
//! [`OperatorExpr`] values is equality of their canonical term maps.

mod monomial;
mod operator;
mod symbol;

pub use monomial::{canonicalize, dummy_name, Monomial};
pub(crate) use operator::rename_pair_apart;
pub use operator::OperatorExpr;
pub use symbol::{Charge, Chirality, DeltaFactor, FieldSymbol, FlavorIndex, Species};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExprError {
    #[error("index `{name}` occurs {count} times in one product")]
    MalformedIndex { name: String, count: usize },
}
