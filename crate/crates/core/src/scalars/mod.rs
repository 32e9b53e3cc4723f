//! Exact scalar arithmetic: rationals, Gaussian rationals and rational
//! functions of the flavor rank `N`.

mod gaussian;
mod poly;
mod ratn;

pub use gaussian::GaussianRational;
pub use poly::Poly;
pub use ratn::RatN;

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by the zero rational function")]
    DivisionByZero,
    #[error("pole at N = {at}")]
    Pole { at: Rational },
    #[error("syntax error at byte {position}: expected {expected}")]
    Parse { position: usize, expected: String },
}

/// Convenience constructor for `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
