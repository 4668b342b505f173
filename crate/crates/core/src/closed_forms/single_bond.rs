//! Cooled state of the Ising ring with one flipped bond.

use crate::spin_core::{StateVector, C64};
use crate::{Error, Result};

/// Equal superposition of the four domain-wall families
/// `0^{2m−k}1^k`, `1^{2m−k}0^k`, `1^{k+1}0^{2m−k−1}`, `0^{k+1}1^{2m−k−1}`
/// for `k = 0..=m`, duplicates merged. The leftmost character is site 0;
/// the flipped bond joins sites `2m−1` and `0`.
pub fn single_bond_cooled_state(m: usize) -> Result<StateVector> {
    if m < 2 {
        return Err(Error::validation("single-bond ring needs 2m ≥ 4"));
    }
    let n = 2 * m;
    // first `lead` sites set to `head`, the rest to the other value
    let pattern = |lead: usize, head_one: bool| {
        let low = (1usize << lead) - 1;
        if head_one {
            low
        } else {
            ((1usize << n) - 1) & !low
        }
    };
    let mut state = StateVector::zeros(n);
    for k in 0..=m {
        for b in [
            pattern(n - k, false),
            pattern(n - k, true),
            pattern(k + 1, true),
            pattern(k + 1, false),
        ] {
            state.amplitudes_mut()[b] = C64::new(1.0, 0.0);
        }
    }
    state.normalized()
}
