//! Exact-diagonalization and combinatorial toolkit for frustrated spin-1/2
//! models: cooling projections onto low-energy manifolds, block
//! entanglement, the frustration degree, closed-form entropies for six
//! prototype models and the entanglement interference ratio.
//!
//! Conventions shared by every module:
//!
//! * Site `0` is the least significant bit of a basis index.
//! * Bit value `0` is the σ^z = +1 state `|0⟩`, bit value `1` is σ^z = −1.
//! * Entropies are in bits (base-2 logarithms).

pub mod closed_forms;
pub mod cooling;
mod error;
pub mod frustration;
pub mod interference;
pub mod models;
pub mod report;
pub mod spin_core;

pub use error::{Error, Result};
