//! Computer algebra for free Dirac fermions and bosonic ghosts with a
//! symbolic number of flavors `N`: Wick-theorem operator product
//! expansions, Sugawara stress tensors, and the spin-charge decompositions
//! of the free stress tensor into commuting current-algebra sectors.

pub mod algebras;
pub mod dsl;
mod error;
pub mod expr;
pub mod linalg;
pub mod oracle;
pub mod report;
pub mod scalars;
pub mod sugawara;
pub mod wick;

pub use error::{Error, Result};
