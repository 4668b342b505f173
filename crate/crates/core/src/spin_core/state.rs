use std::fmt;

use super::C64;
use crate::{Error, Result};

const NORM_TOL: f64 = 1e-12;

/// Complex amplitudes over the `2^N` computational basis of `N` spin-1/2
/// sites. Bit `i` of a basis index is the state of site `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    num_sites: usize,
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(num_sites: usize, amplitudes: Vec<C64>) -> Result<Self> {
        if num_sites >= usize::BITS as usize || amplitudes.len() != 1usize << num_sites {
            return Err(Error::validation(format!(
                "{} amplitudes cannot describe {} sites",
                amplitudes.len(),
                num_sites
            )));
        }
        Ok(Self {
            num_sites,
            amplitudes,
        })
    }

    pub fn from_real(num_sites: usize, amplitudes: &[f64]) -> Result<Self> {
        Self::new(
            num_sites,
            amplitudes.iter().map(|&a| C64::new(a, 0.0)).collect(),
        )
    }

    pub fn zeros(num_sites: usize) -> Self {
        Self {
            num_sites,
            amplitudes: vec![C64::new(0.0, 0.0); 1 << num_sites],
        }
    }

    /// The computational basis state `|index⟩`.
    pub fn basis(num_sites: usize, index: usize) -> Self {
        let mut s = Self::zeros(num_sites);
        s.amplitudes[index] = C64::new(1.0, 0.0);
        s
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [C64] {
        &mut self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }

    pub(crate) fn require_normalized(&self, what: &str) -> Result<()> {
        if self.is_normalized() {
            Ok(())
        } else {
            Err(Error::validation(format!(
                "{what} must be normalized (|ψ|² = {})",
                self.norm_sqr()
            )))
        }
    }

    pub fn normalize(&mut self) -> Result<()> {
        let n = self.norm_sqr().sqrt();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::validation("cannot normalize a zero vector"));
        }
        let inv = 1.0 / n;
        for a in &mut self.amplitudes {
            *a *= inv;
        }
        Ok(())
    }

    pub fn normalized(mut self) -> Result<Self> {
        self.normalize()?;
        Ok(self)
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> C64 {
        debug_assert_eq!(self.dim(), other.dim());
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |⟨self|other⟩|² for normalized inputs.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }

    pub fn add_scaled(&mut self, factor: C64, other: &StateVector) {
        for (a, b) in self.amplitudes.iter_mut().zip(&other.amplitudes) {
            *a += factor * b;
        }
    }

    /// Rotates the global phase so the largest-magnitude amplitude (first
    /// one on ties) is real and positive.
    pub fn fix_global_phase(&mut self) {
        let mut best = 0;
        let mut best_mag = 0.0;
        for (i, a) in self.amplitudes.iter().enumerate() {
            let mag = a.norm();
            if mag > best_mag * (1.0 + 1e-12) {
                best = i;
                best_mag = mag;
            }
        }
        if best_mag == 0.0 {
            return;
        }
        let phase = self.amplitudes[best].conj() / best_mag;
        for a in &mut self.amplitudes {
            *a *= phase;
        }
        self.amplitudes[best] = C64::new(best_mag, 0.0);
    }
}

/// Normalized tensor product of single-site vectors `(⟨0|ψ_i⟩, ⟨1|ψ_i⟩)`,
/// site 0 first.
pub fn product_state(per_site: &[[C64; 2]]) -> Result<StateVector> {
    let n = per_site.len();
    let mut local = Vec::with_capacity(n);
    for (i, v) in per_site.iter().enumerate() {
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        if !(norm > 0.0) {
            return Err(Error::validation(format!("site {i} has a zero local vector")));
        }
        local.push([v[0] / norm, v[1] / norm]);
    }
    let mut amplitudes = vec![C64::new(1.0, 0.0); 1 << n];
    for (b, amp) in amplitudes.iter_mut().enumerate() {
        for (i, v) in local.iter().enumerate() {
            *amp *= v[(b >> i) & 1];
        }
    }
    StateVector::new(n, amplitudes)
}

/// Product of two-site singlets `(|0_a 1_b⟩ − |1_a 0_b⟩)/√2` over ordered
/// pairs `(a, b)`. Every site must belong to exactly one pair.
pub fn singlet_product(num_sites: usize, pairs: &[(usize, usize)]) -> Result<StateVector> {
    let mut seen = vec![false; num_sites];
    for &(a, b) in pairs {
        for s in [a, b] {
            if s >= num_sites || seen[s] {
                return Err(Error::validation(format!(
                    "site {s} is out of range or covered twice"
                )));
            }
            seen[s] = true;
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::validation("singlet pairs must cover every site"));
    }
    let mut state = StateVector::zeros(num_sites);
    let amp = (0.5f64).powf(pairs.len() as f64 / 2.0);
    for choice in 0usize..1 << pairs.len() {
        let mut index = 0;
        let mut sign = 1.0;
        for (j, &(a, b)) in pairs.iter().enumerate() {
            if (choice >> j) & 1 == 0 {
                index |= 1 << b;
            } else {
                index |= 1 << a;
                sign = -sign;
            }
        }
        state.amplitudes[index] = C64::new(sign * amp, 0.0);
    }
    Ok(state)
}

/// Equal superposition of all bitstrings with exactly `num_ones` sites in
/// `|1⟩`.
pub fn dicke_state(num_sites: usize, num_ones: usize) -> Result<StateVector> {
    if num_ones > num_sites {
        return Err(Error::validation(format!(
            "{num_ones} excitations do not fit on {num_sites} sites"
        )));
    }
    let mut state = StateVector::zeros(num_sites);
    for (b, a) in state.amplitudes.iter_mut().enumerate() {
        if b.count_ones() as usize == num_ones {
            *a = C64::new(1.0, 0.0);
        }
    }
    state.normalized()
}

/// The "system" side of a bipartition: an ordered set of distinct site
/// indices. The order fixes the bit layout of the reduced density matrix
/// (the `j`-th listed site becomes bit `j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bipartition {
    num_sites: usize,
    system_sites: Vec<usize>,
}

impl Bipartition {
    pub fn new(num_sites: usize, system_sites: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; num_sites];
        for &s in &system_sites {
            if s >= num_sites {
                return Err(Error::validation(format!(
                    "site {s} out of range for {num_sites} sites"
                )));
            }
            if seen[s] {
                return Err(Error::validation(format!("site {s} listed twice")));
            }
            seen[s] = true;
        }
        Ok(Self {
            num_sites,
            system_sites,
        })
    }

    /// `len` consecutive sites starting at `start`, wrapping around the ring.
    pub fn contiguous(num_sites: usize, start: usize, len: usize) -> Result<Self> {
        if len > num_sites {
            return Err(Error::validation(format!(
                "block of {len} sites does not fit in {num_sites}"
            )));
        }
        Self::new(
            num_sites,
            (0..len).map(|j| (start + j) % num_sites).collect(),
        )
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    pub fn system_sites(&self) -> &[usize] {
        &self.system_sites
    }

    pub fn len(&self) -> usize {
        self.system_sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.system_sites.is_empty()
    }

    pub fn is_proper(&self) -> bool {
        !self.system_sites.is_empty() && self.system_sites.len() < self.num_sites
    }

    pub fn contains(&self, site: usize) -> bool {
        self.system_sites.contains(&site)
    }

    /// Environment sites in ascending order.
    pub fn complement(&self) -> Bipartition {
        let env = (0..self.num_sites)
            .filter(|s| !self.system_sites.contains(s))
            .collect();
        Bipartition {
            num_sites: self.num_sites,
            system_sites: env,
        }
    }

    pub fn system_mask(&self) -> usize {
        self.system_sites.iter().fold(0, |m, &s| m | (1 << s))
    }
}

impl fmt::Display for Bipartition {
    /// Sites in listed order joined by `+`; runs of three or more
    /// consecutive sites are written `a..b` (inclusive), e.g. `0..3+7`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sites = &self.system_sites;
        let mut i = 0;
        while i < sites.len() {
            let mut j = i;
            while j + 1 < sites.len() && sites[j + 1] == sites[j] + 1 {
                j += 1;
            }
            if i > 0 {
                f.write_str("+")?;
            }
            if j >= i + 2 {
                write!(f, "{}..{}", sites[i], sites[j])?;
                i = j + 1;
            } else {
                write!(f, "{}", sites[i])?;
                i += 1;
            }
        }
        Ok(())
    }
}
