//! Majumdar-Ghosh dimer states and block-entropy bounds.

use crate::spin_core::{singlet_product, StateVector, C64};
use crate::{Error, Result};

/// `(lower, upper)` bounds on the block entropy for a block of `k` sites:
/// `(2, log₂5)` for even `k`, `(1, log₂3)` for odd `k`.
pub fn mg_bounds(k: usize) -> Result<(f64, f64)> {
    match k {
        0 => Err(Error::validation("block size must be at least 1")),
        k if k % 2 == 0 => Ok((2.0, 5f64.log2())),
        _ => Ok((1.0, 3f64.log2())),
    }
}

/// Singlet pairs of `G+` (`(2i−1, 2i mod 2m)`) or `G−` (`(2i−1, 2i−2)`),
/// `i = 1..=m`.
pub fn mg_dimer_pairs(m: usize, plus: bool) -> Vec<(usize, usize)> {
    let n = 2 * m;
    (1..=m)
        .map(|i| {
            if plus {
                (2 * i - 1, (2 * i) % n)
            } else {
                (2 * i - 1, 2 * i - 2)
            }
        })
        .collect()
}

pub fn mg_dimer_state(m: usize, plus: bool) -> Result<StateVector> {
    if m < 2 {
        return Err(Error::validation("Majumdar-Ghosh ring needs 2m ≥ 4"));
    }
    singlet_product(2 * m, &mg_dimer_pairs(m, plus))
}

/// Normalized `a|G+⟩ + b|G−⟩`.
pub fn mg_superposition(m: usize, a: C64, b: C64) -> Result<StateVector> {
    let mut s = mg_dimer_state(m, true)?;
    for x in s.amplitudes_mut() {
        *x *= a;
    }
    s.add_scaled(b, &mg_dimer_state(m, false)?);
    s.normalized()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds() {
        assert_eq!(mg_bounds(4).unwrap(), (2.0, 5f64.log2()));
        assert_eq!(mg_bounds(3).unwrap(), (1.0, 3f64.log2()));
        assert!(mg_bounds(0).is_err());
    }

    #[test]
    fn dimer_overlap() {
        // ⟨G+|G−⟩ = ±2^{1−m} on a ring of 2m sites
        for m in 2..6 {
            let o = mg_dimer_state(m, true)
                .unwrap()
                .inner(&mg_dimer_state(m, false).unwrap())
                .norm();
            assert!((o - 2f64.powi(1 - m as i32)).abs() < 1e-12);
        }
    }
}
