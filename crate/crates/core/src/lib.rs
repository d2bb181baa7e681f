//! Spin-1 Duffin–Kemmer–Petiau oscillator in (2+1) dimensions with a uniform
//! magnetic field.
//!
//! The crate is split by concern:
//!
//! - [`algebra`]: exact 3×3 and 6×6 β-matrix representations, the trilinear
//!   DKP algebra check, projection operators and the six-to-three spinor
//!   reduction.
//! - [`spectrum`]: the quantization condition, its quartic form and the
//!   constraint filter that separates admissible energies from roots
//!   introduced by squaring, plus closed forms for the two particular cases.
//! - [`states`]: Laguerre eigenfunctions, component reconstruction, charge
//!   density normalization and finite-difference equation-of-motion checks.
//! - [`lieb`]: the DKP-like Lieb-lattice Hamiltonian and the one-loop
//!   polarization integrals.
//!
//! Natural units (ħ = c = 1) are used throughout.

// `!(x > 0.0)` is used deliberately so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod error;
pub mod lieb;
pub mod quad;
pub mod special;
pub mod spectrum;
pub mod states;

pub use error::{Error, Result};
