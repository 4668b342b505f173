//! Long-range Ising gas: reduced spectra of the cooled Dicke state, their
//! binomial (large-`m`) limit, and the closed-form frustration degree.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::binomial::{binomial, LnFactorial};
use crate::models::ising_gas_zero_count;
use crate::spin_core::shannon_entropy_bits;
use crate::{Error, Result};

/// Largest `m` evaluated in exact rational arithmetic.
pub const EXACT_LIMIT: usize = 1000;

/// Eigenvalues of the `k`-site reduced state of the Dicke state with
/// `mμ = m(1+λ)` zeros on `2m` sites.
///
/// Weight `i` (the number of zeros inside the block) is the hypergeometric
/// probability `[k,i][2m−k, mμ−i] / [2m, mμ]` and belongs to the block
/// state `|W_{k−i}⟩`.
#[derive(Clone, Debug)]
pub struct DickeSpectrum {
    pub m: usize,
    pub lambda: f64,
    pub k: usize,
    /// `mμ`, the number of zeros in the whole system.
    pub zeros: usize,
    weights: Vec<(usize, f64)>,
    exact: Option<Vec<BigRational>>,
}

impl DickeSpectrum {
    /// `(i, weight)` pairs for every `i` with nonzero weight, ascending `i`.
    pub fn weights(&self) -> &[(usize, f64)] {
        &self.weights
    }

    /// Exact rational weights (same order as [`DickeSpectrum::weights`]),
    /// available for `m ≤ EXACT_LIMIT`.
    pub fn exact_weights(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    pub fn entropy(&self) -> f64 {
        shannon_entropy_bits(self.weights.iter().map(|w| w.1))
    }
}

/// Reduced spectrum of the cooled Ising-gas state for a block of `k` sites.
pub fn ising_gas_rho_k(m: usize, lambda: f64, k: usize) -> Result<DickeSpectrum> {
    let zeros = ising_gas_zero_count(m, lambda)?;
    let n = 2 * m;
    if k == 0 || k >= n {
        return Err(Error::validation(format!("block size must satisfy 0 < k < {n}, got {k}")));
    }
    let ones = n - zeros;
    let i_min = k.saturating_sub(ones);
    let i_max = k.min(zeros);
    let (weights, exact) = if m <= EXACT_LIMIT {
        let total = BigInt::from(binomial(n, zeros));
        // walk [k, i] up and [n−k, zeros−i] down together
        let mut a: BigUint = binomial(k, i_min);
        let mut b: BigUint = binomial(n - k, zeros - i_min);
        let mut exact = Vec::with_capacity(i_max + 1 - i_min);
        let mut weights = Vec::with_capacity(i_max + 1 - i_min);
        for i in i_min..=i_max {
            let w = BigRational::new(BigInt::from(&a * &b), total.clone());
            weights.push((i, w.to_f64().unwrap_or(0.0)));
            exact.push(w);
            if i < i_max {
                a = a * (k - i) / (i + 1);
                let j = zeros - i;
                b = b * j / (n - k - j + 1);
            }
        }
        (weights, Some(exact))
    } else {
        let lf = LnFactorial::new(n);
        let ln_total = lf.ln_binomial(n, zeros);
        let weights = (i_min..=i_max)
            .map(|i| {
                let lw = lf.ln_binomial(k, i) + lf.ln_binomial(n - k, zeros - i) - ln_total;
                (i, lw.exp())
            })
            .collect();
        (weights, None)
    };
    Ok(DickeSpectrum {
        m,
        lambda,
        k,
        zeros,
        weights,
        exact,
    })
}

/// `½ log₂((1−λ²) k)`.
pub fn ising_gas_asymptote(k: usize, lambda: f64) -> Result<f64> {
    if k == 0 {
        return Err(Error::validation("block size must be at least 1"));
    }
    if !(0.0..1.0).contains(&lambda) {
        return Err(Error::validation(format!("lambda must lie in [0, 1), got {lambda}")));
    }
    Ok(0.5 * ((1.0 - lambda * lambda) * k as f64).log2())
}

/// Binomial weights `e_i = [k,i] ((1+λ)/2)^i ((1−λ)/2)^{k−i}`, `i = 0..=k`.
pub fn ising_gas_stirling_weights(k: usize, lambda: f64) -> Result<Vec<f64>> {
    if k == 0 {
        return Err(Error::validation("block size must be at least 1"));
    }
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::validation(format!("lambda must lie in [0, 1], got {lambda}")));
    }
    let lf = LnFactorial::new(k);
    let (lp, lq) = (((1.0 + lambda) / 2.0).ln(), ((1.0 - lambda) / 2.0).ln());
    let term = |count: usize, l: f64| if count == 0 { 0.0 } else { count as f64 * l };
    Ok((0..=k)
        .map(|i| (lf.ln_binomial(k, i) + term(i, lp) + term(k - i, lq)).exp())
        .collect())
}

pub fn ising_gas_stirling_entropy(k: usize, lambda: f64) -> Result<f64> {
    Ok(shannon_entropy_bits(ising_gas_stirling_weights(k, lambda)?))
}

/// `(1 + 2λ − λ² − 1/m) / (1+λ)²`.
pub fn ising_gas_frustration(m: usize, lambda: f64) -> f64 {
    (1.0 + 2.0 * lambda - lambda * lambda - 1.0 / m as f64) / ((1.0 + lambda) * (1.0 + lambda))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn four_site_half_block() {
        let s = ising_gas_rho_k(2, 0.0, 2).unwrap();
        let w: Vec<f64> = s.weights().iter().map(|w| w.1).collect();
        assert_eq!(w.len(), 3);
        assert!((w[0] - 1.0 / 6.0).abs() < 1e-15);
        assert!((w[1] - 2.0 / 3.0).abs() < 1e-15);
        assert!((s.entropy() - 1.2516291673878228).abs() < 1e-12);
    }

    #[test]
    fn exact_weights_sum_to_one() {
        for (m, lambda) in [(3, 0.0), (5, 0.4), (40, 0.5), (7, 1.0)] {
            for k in 1..2 * m {
                let s = ising_gas_rho_k(m, lambda, k).unwrap();
                let sum: BigRational = s.exact_weights().unwrap().iter().sum();
                assert!(sum.is_one(), "m={m} λ={lambda} k={k}");
            }
        }
    }

    #[test]
    fn polarized_sector_has_zero_entropy() {
        let s = ising_gas_rho_k(4, 1.0, 3).unwrap();
        assert_eq!(s.weights().len(), 1);
        assert_eq!(s.entropy(), 0.0);
    }

    #[test]
    fn log_space_path_matches_exact() {
        let exact = ising_gas_rho_k(1000, 0.5, 37).unwrap();
        let lf = LnFactorial::new(2000);
        let ln_total = lf.ln_binomial(2000, 1500);
        for &(i, w) in exact.weights() {
            let lw = lf.ln_binomial(37, i) + lf.ln_binomial(1963, 1500 - i) - ln_total;
            if w > 1e-250 {
                assert!((lw.exp() / w - 1.0).abs() < 1e-9, "i={i}");
            }
        }
        assert!(ising_gas_rho_k(1001, 0.0, 37).unwrap().exact_weights().is_none());
    }

    #[test]
    fn asymptote_values() {
        assert_eq!(ising_gas_asymptote(4, 0.0).unwrap(), 1.0);
        assert!((ising_gas_asymptote(64, 0.5).unwrap() - 0.5 * 48f64.log2()).abs() < 1e-15);
        assert!(ising_gas_asymptote(4, 1.0).is_err());
    }

    #[test]
    fn stirling_weights() {
        let w = ising_gas_stirling_weights(2, 0.0).unwrap();
        assert_eq!(w, vec![0.25, 0.5, 0.25]);
        assert_eq!(ising_gas_stirling_entropy(2, 0.0).unwrap(), 1.5);
        let w = ising_gas_stirling_weights(3, 1.0).unwrap();
        assert_eq!(w, vec![0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn frustration_formula() {
        assert_eq!(ising_gas_frustration(4, 0.0), 0.75);
    }
}
