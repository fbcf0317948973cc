//! Commuting operator sets for the product (uncoupled) and coupled bases of
//! su(n) tensor-product representations, with numerical completeness checks
//! and isotypic decomposition.
//!
//! The product basis of `R₁ ⊗ R₂` is labeled by every single-irrep operator
//! of each factor; the coupled basis replaces the factor weights and subgroup
//! Casimirs by their coupled counterparts `O = O(1) + O(2)`, and comes out
//! `½(n−1)(n−2)` labels short. [`completeness`] measures exactly which joint
//! eigenspaces stay degenerate, and [`decomp`] ties that degeneracy to repeated
//! irreps in the decomposition.

pub mod basis_sets;
pub mod cache;
pub mod casimir;
pub mod cli;
pub mod completeness;
pub mod decomp;
pub mod error;
pub mod lie_core;
pub mod linalg;
pub mod tensor_space;

pub use error::{Error, Result};
