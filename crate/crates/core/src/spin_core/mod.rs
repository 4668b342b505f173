//! Many-spin states on a bit-encoded basis, Pauli-string operators, dense
//! spectral decomposition, partial traces and von Neumann entropy.
//!
//! All routines are single threaded and sum in ascending basis-index order,
//! so results are reproducible bit for bit.

mod entropy;
mod pauli;
mod spectrum;
mod state;

pub use entropy::{entanglement_entropy, partial_trace, shannon_entropy_bits, von_neumann_entropy};
pub use pauli::{Pauli, PauliOperator, PauliString};
pub use spectrum::{
    build_dense, default_degeneracy_tol, diagonalize, diagonalize_matrix, DenseConfig, Manifold,
    SpectralDecomposition, DEFAULT_DENSE_CAP, DENSE_CAP_ENV,
};
pub use state::{dicke_state, product_state, singlet_product, Bipartition, StateVector};

pub use nalgebra::{Complex, DMatrix};

/// Complex amplitude type used throughout.
pub type C64 = Complex<f64>;
