//! Heisenberg gas: the symmetric-multiplet entropy bound and the
//! Clebsch-Gordan Schmidt decomposition for single-color blocks.

use super::binomial::LnFactorial;
use crate::spin_core::{shannon_entropy_bits, StateVector, C64};
use crate::{Error, Result};

/// `log₂((b+1)(w+1))` for a block with `b` black and `w` white sites.
pub fn heisenberg_gas_bound(b: usize, w: usize) -> f64 {
    (((b + 1) * (w + 1)) as f64).log2()
}

/// One nonzero coefficient of the Schmidt table.
///
/// With `a = M + k/2` zeros in the block, `c = p + m/2` and `m − c` zeros
/// among the white sites, the amplitude is
/// `(−1)^{c−m} C / √(m+1)` with `C² = [k,a][m−k,c−a] / [m,c]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchmidtEntry {
    pub a: usize,
    pub c: usize,
    pub amplitude: f64,
}

#[derive(Clone, Debug)]
pub struct HeisenbergSchmidt {
    pub m: usize,
    pub k: usize,
    entries: Vec<SchmidtEntry>,
}

impl HeisenbergSchmidt {
    pub fn entries(&self) -> &[SchmidtEntry] {
        &self.entries
    }

    /// Schmidt weights indexed by `a = 0..=k`.
    pub fn spectrum(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.k + 1];
        for e in &self.entries {
            out[e.a] += e.amplitude * e.amplitude;
        }
        out
    }

    pub fn entropy(&self) -> f64 {
        shannon_entropy_bits(self.spectrum())
    }

    /// The state on `2m` sites: black sites `0..m` with the block on
    /// `0..k`, white sites `m..2m`. Each multiplet is a normalized Dicke
    /// state.
    pub fn to_state(&self) -> Result<StateVector> {
        let (m, k) = (self.m, self.k);
        if 2 * m >= usize::BITS as usize - 1 {
            return Err(Error::SizeLimit {
                what: "Schmidt state",
                sites: 2 * m,
                limit: usize::BITS as usize - 2,
            });
        }
        let lf = LnFactorial::new(m);
        let mut amp = vec![vec![0.0; m + 1]; k + 1];
        for e in &self.entries {
            amp[e.a][e.c] = e.amplitude;
        }
        let mask = |lo: usize, hi: usize| ((1usize << hi) - 1) & !((1usize << lo) - 1);
        let (sys, benv, white) = (mask(0, k), mask(k, m), mask(m, 2 * m));
        let mut state = StateVector::zeros(2 * m);
        for (b, out) in state.amplitudes_mut().iter_mut().enumerate() {
            let a = k - (b & sys).count_ones() as usize;
            let e = (m - k) - (b & benv).count_ones() as usize;
            let wz = m - (b & white).count_ones() as usize;
            let c = m - wz;
            if c < a || c - a != e {
                continue;
            }
            let v = amp[a][c];
            if v != 0.0 {
                let ln_norm = lf.ln_binomial(k, a) + lf.ln_binomial(m - k, e) + lf.ln_binomial(m, wz);
                *out = C64::new(v * (-0.5 * ln_norm).exp(), 0.0);
            }
        }
        Ok(state)
    }
}

/// Schmidt table of the cooled Heisenberg-gas state for a block of `k`
/// sites of a single color.
pub fn heisenberg_gas_schmidt_state(m: usize, k: usize) -> Result<HeisenbergSchmidt> {
    if m == 0 || k > m {
        return Err(Error::validation(format!("need 0 ≤ k ≤ m and m ≥ 1, got m={m} k={k}")));
    }
    let lf = LnFactorial::new(m);
    let ln_m1 = ((m + 1) as f64).ln();
    let mut entries = Vec::new();
    for a in 0..=k {
        for c in a..=a + (m - k) {
            let ln_c2 = lf.ln_binomial(k, a) + lf.ln_binomial(m - k, c - a) - lf.ln_binomial(m, c);
            let sign = if (m - c).is_multiple_of(2) { 1.0 } else { -1.0 };
            entries.push(SchmidtEntry {
                a,
                c,
                amplitude: sign * (0.5 * (ln_c2 - ln_m1)).exp(),
            });
        }
    }
    Ok(HeisenbergSchmidt { m, k, entries })
}
