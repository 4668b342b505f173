//! Plaquette RVB state: the exact `c_{l,r}` Schmidt matrix, its mean-field
//! limit `q(d)`, the single-plaquette entropy `E_pl(d)` and the boundary law.

use nalgebra::DMatrix;

use super::binomial::LnFactorial;
use crate::spin_core::{shannon_entropy_bits, StateVector, C64};
use crate::{Error, Result};

/// Cooled RVB state with `s` VV plaquettes out of `n = m²`, split into a
/// system of `k` plaquettes and the rest. Row `l` (column `r`) labels the
/// normalized equal superposition of system (environment) configurations
/// with `l` (`r`) plaquettes in `|⊥⟩`.
#[derive(Clone, Debug)]
pub struct RvbState {
    pub n: usize,
    pub s: usize,
    pub k: usize,
    c: DMatrix<f64>,
}

impl RvbState {
    /// Normalized coefficient matrix, `(min(s,k)+1) × (min(s,n−k)+1)`.
    pub fn coefficients(&self) -> &DMatrix<f64> {
        &self.c
    }

    /// Squared singular values of `c`, descending.
    pub fn schmidt_spectrum(&self) -> Vec<f64> {
        let mut sv: Vec<f64> = self
            .c
            .clone()
            .singular_values()
            .iter()
            .map(|x| x * x)
            .collect();
        sv.sort_by(|a, b| b.total_cmp(a));
        sv
    }

    /// Entanglement entropy between the `k` system plaquettes and the rest.
    pub fn entropy(&self) -> f64 {
        shannon_entropy_bits(self.schmidt_spectrum())
    }

    /// Expected fraction of system plaquettes in `|⊥⟩`, `E[l]/k`.
    pub fn perp_fraction(&self) -> f64 {
        let mut acc = 0.0;
        for l in 0..self.c.nrows() {
            acc += l as f64 * self.c.row(l).norm_squared();
        }
        acc / self.k as f64
    }

    /// The state in the effective basis, one qubit per plaquette (bit set =
    /// `|⊥⟩`), system on plaquettes `0..k`.
    pub fn to_state(&self) -> Result<StateVector> {
        if self.n >= usize::BITS as usize - 1 {
            return Err(Error::SizeLimit {
                what: "RVB state",
                sites: self.n,
                limit: usize::BITS as usize - 2,
            });
        }
        let lf = LnFactorial::new(self.n);
        let sys = (1usize << self.k) - 1;
        let mut state = StateVector::zeros(self.n);
        for (b, out) in state.amplitudes_mut().iter_mut().enumerate() {
            let l = (b & sys).count_ones() as usize;
            let r = (b & !sys).count_ones() as usize;
            if l < self.c.nrows() && r < self.c.ncols() {
                let norm = 0.5 * (lf.ln_binomial(self.k, l) + lf.ln_binomial(self.n - self.k, r));
                *out = C64::new(self.c[(l, r)] * (-norm).exp(), 0.0);
            }
        }
        Ok(state)
    }
}

/// Exact RVB Schmidt matrix,
/// `c_{l,r} ∝ √(3^l [k,l]) √(3^r [n−k,r]) [n−l−r, s−l−r]`, evaluated in log
/// space and normalized.
pub fn rvb_state(n: usize, s: usize, k: usize) -> Result<RvbState> {
    if s > n {
        return Err(Error::validation(format!("{s} vertical plaquettes exceed {n}")));
    }
    if k == 0 || k >= n {
        return Err(Error::validation(format!("system size must satisfy 0 < k < {n}, got {k}")));
    }
    let lf = LnFactorial::new(n);
    let ln3 = 3f64.ln();
    let (rows, cols) = (s.min(k) + 1, s.min(n - k) + 1);
    let mut ln_c = DMatrix::from_element(rows, cols, f64::NEG_INFINITY);
    for l in 0..rows {
        for r in 0..cols.min(s - l + 1) {
            ln_c[(l, r)] = 0.5 * (l as f64 * ln3 + lf.ln_binomial(k, l))
                + 0.5 * (r as f64 * ln3 + lf.ln_binomial(n - k, r))
                + lf.ln_binomial(n - l - r, s - l - r);
        }
    }
    let top = ln_c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mut c = ln_c.map(|x| (x - top).exp());
    let norm = c.norm();
    c /= norm;
    Ok(RvbState { n, s, k, c })
}

/// Entropy of one half of a plaquette (cut between its two rows) against
/// everything else. The `|HH⟩` component is a product across that cut and
/// `|⊥⟩` is a flat rank-3 state, so the entropy is `H₂(b) + b log₂3` with
/// `b` the `|⊥⟩` probability of the plaquette.
pub fn rvb_half_plaquette_entropy(n: usize, s: usize) -> Result<f64> {
    let b = rvb_state(n, s, 1)?.perp_fraction();
    Ok(half_plaquette_entropy_from_perp(b))
}

fn half_plaquette_entropy_from_perp(b: f64) -> f64 {
    shannon_entropy_bits([1.0 - b, b]) + b.clamp(0.0, 1.0) * 3f64.log2()
}

/// `q(d) = (−1 + √(1 + 12d(1−d))) / (6(1−d))` for `0 ≤ d < 1`.
pub fn rvb_q(d: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&d) {
        return Err(Error::validation(format!("density must lie in [0, 1), got {d}")));
    }
    Ok((-1.0 + (1.0 + 12.0 * d * (1.0 - d)).sqrt()) / (6.0 * (1.0 - d)))
}

/// `E_pl(d) = log₂(1+3q²) − (3q²/(1+3q²)) log₂ q²`.
pub fn rvb_plaquette_entropy(d: f64) -> Result<f64> {
    let q = rvb_q(d)?;
    let q2 = q * q;
    if q2 == 0.0 {
        return Ok(0.0);
    }
    Ok((1.0 + 3.0 * q2).log2() - 3.0 * q2 / (1.0 + 3.0 * q2) * q2.log2())
}

/// Boundary crossing `h` plaquettes horizontally and `v` vertically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundaryPath {
    pub h: usize,
    pub v: usize,
}

impl BoundaryPath {
    pub fn new(h: usize, v: usize) -> Result<Self> {
        if h + v == 0 {
            return Err(Error::validation("boundary must intersect at least one plaquette"));
        }
        Ok(Self { h, v })
    }

    pub fn length(&self) -> usize {
        self.h + self.v
    }
}

/// `h E_pl(d) + v E_pl(1−d)`.
pub fn rvb_boundary_law(d: f64, path: BoundaryPath) -> Result<f64> {
    let mut e = 0.0;
    if path.h > 0 {
        e += path.h as f64 * rvb_plaquette_entropy(d)?;
    }
    if path.v > 0 {
        e += path.v as f64 * rvb_plaquette_entropy(1.0 - d)?;
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_values() {
        assert_eq!(rvb_q(0.0).unwrap(), 0.0);
        assert!((rvb_q(0.5).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!((rvb_q(0.25).unwrap() - 0.178_394_586_2).abs() < 1e-9);
        assert!(rvb_q(1.0).is_err());
    }

    #[test]
    fn plaquette_entropy_values() {
        assert_eq!(rvb_plaquette_entropy(0.0).unwrap(), 0.0);
        let half = rvb_plaquette_entropy(0.5).unwrap();
        // q = 1/3: log₂(4/3) + (1/4) log₂ 9
        assert!((half - ((4.0f64 / 3.0).log2() + 0.25 * 9f64.log2())).abs() < 1e-14);
        assert!((half - 1.2075).abs() < 1e-4);
        let q2 = rvb_q(0.5).unwrap().powi(2);
        let b = 3.0 * q2 / (1.0 + 3.0 * q2);
        assert!((half_plaquette_entropy_from_perp(b) - half).abs() < 1e-14);
    }

    #[test]
    fn all_horizontal_is_product() {
        let st = rvb_state(9, 0, 3).unwrap();
        assert_eq!(st.coefficients().shape(), (1, 1));
        assert_eq!(st.entropy(), 0.0);
    }

    #[test]
    fn boundary_law() {
        let p = BoundaryPath::new(2, 1).unwrap();
        let want = 2.0 * rvb_plaquette_entropy(0.3).unwrap() + rvb_plaquette_entropy(0.7).unwrap();
        assert!((rvb_boundary_law(0.3, p).unwrap() - want).abs() < 1e-15);
        assert!(BoundaryPath::new(0, 0).is_err());
        assert_eq!(rvb_boundary_law(0.0, BoundaryPath::new(3, 0).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn state_is_normalized() {
        let st = rvb_state(4, 2, 1).unwrap();
        assert!(st.to_state().unwrap().is_normalized());
        assert!((st.coefficients().norm() - 1.0).abs() < 1e-14);
    }
}
