//! Open quadratic bosonic systems through third quantization.
//!
//! Given a quadratic Hamiltonian and linear bath operators the crate builds the
//! structure matrices `X` and `Y`, enumerates the Liouvillian spectrum from the
//! rapidities (eigenvalues of `X`), checks PT structure, and evolves first and
//! second moments. The [`trajectory`] module provides a dense finite-spin
//! Lindblad integrator and a quantum-jump unraveling used to cross-check the
//! large-spin bosonic picture.

pub mod dynamics;
pub mod error;
pub mod export;
pub mod model;
pub mod numerics;
pub mod spectrum;
pub mod symmetry;
pub mod trajectory;

pub use error::{Error, Result};
pub use numerics::{ComplexMatrix, C64};
