//! Analytic results for the prototype models, usable far beyond
//! exact-diagonalization sizes. Binomials are exact big integers up to
//! `m = 1000` and log-factorial tables above.

mod binomial;
mod heisenberg_gas;
mod ising_gas;
mod mg;
mod rvb;
mod shastry;
mod single_bond;

pub use binomial::{binomial, binomial_row, LnFactorial};
pub use heisenberg_gas::{
    heisenberg_gas_bound, heisenberg_gas_schmidt_state, HeisenbergSchmidt, SchmidtEntry,
};
pub use ising_gas::{
    ising_gas_asymptote, ising_gas_frustration, ising_gas_rho_k, ising_gas_stirling_entropy,
    ising_gas_stirling_weights, DickeSpectrum, EXACT_LIMIT,
};
pub use mg::{mg_bounds, mg_dimer_pairs, mg_dimer_state, mg_superposition};
pub use rvb::{
    rvb_boundary_law, rvb_half_plaquette_entropy, rvb_plaquette_entropy, rvb_q, rvb_state,
    BoundaryPath, RvbState,
};
pub use shastry::shastry_cut_dimers;
pub use single_bond::single_bond_cooled_state;

use crate::models::{ModelKind, ModelSpec};
use crate::spin_core::Bipartition;

/// `(lower, upper)` analytic bounds on the cooled-state entropy across
/// `cut`, where the model has them.
pub fn entropy_bounds(spec: &ModelSpec, cut: &Bipartition) -> (Option<f64>, Option<f64>) {
    if !cut.is_proper() {
        return (None, None);
    }
    match spec.kind {
        ModelKind::MajumdarGhosh => match mg_bounds(cut.len()) {
            Ok((lo, hi)) => (Some(lo), Some(hi)),
            Err(_) => (None, None),
        },
        ModelKind::HeisenbergGas => {
            let b = cut.system_sites().iter().filter(|&&s| s < spec.m).count();
            (None, Some(heisenberg_gas_bound(b, cut.len() - b)))
        }
        _ => (None, None),
    }
}
