//! Exact coderivation calculus on the tensor coalgebra of a Z/2-graded
//! space, Hochschild cohomology of codifferentials, and the moduli space of
//! 2-dimensional associative algebras with its deformations.

#![allow(clippy::needless_range_loop)]

pub mod coderivation;
pub mod deformation;
pub mod error;
pub mod field;
pub mod hochschild;
pub mod linalg;
pub mod moduli;
mod parse;
pub mod scalar;
pub mod verify;

pub use coderivation::{
    cochain_basis, decleene_cocycle, BasisCoderivation, Coderivation, GradedSpace, MultiIndex,
    Parity,
};
pub use scalar::{Monomial, Polynomial, Rational};
