//! Independent ground truth from explicit generator matrices: completeness
//! relations and Casimir constants by brute force, and every symbolic
//! identity re-derived with flavor indices expanded at small `n`.

mod basis;
mod expand;
mod matrix;
mod verify;

pub use basis::{defining_size, family_lambda, generator_basis, symplectic_form, GeneratorBasis};
pub use expand::*;
pub use matrix::Matrix;
pub use verify::*;
