//! Block entropy of the Shastry-Sutherland dimer ground state.

use crate::models::shastry_sutherland_dimers;
use crate::spin_core::Bipartition;
use crate::{Error, Result};

/// Number of `J2` dimers with exactly one site in the block, which is the
/// block entropy in bits of the dimer-product ground state.
pub fn shastry_cut_dimers(l: usize, cut: &Bipartition) -> Result<usize> {
    if cut.num_sites() != l * l {
        return Err(Error::validation(format!(
            "cut is for {} sites, lattice has {}",
            cut.num_sites(),
            l * l
        )));
    }
    Ok(shastry_sutherland_dimers(l)?
        .into_iter()
        .filter(|&(a, b)| cut.contains(a) != cut.contains(b))
        .count())
}
