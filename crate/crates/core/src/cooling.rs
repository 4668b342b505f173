//! Cooling: project an initial state onto the eigenstates below an energy
//! threshold and renormalize.

use std::fmt;

use crate::closed_forms::entropy_bounds;
use crate::models::ModelSpec;
use crate::report::{EntropyReport, Source};
use crate::spin_core::{
    diagonalize, entanglement_entropy, product_state, Bipartition, DenseConfig, PauliOperator,
    SpectralDecomposition, StateVector, C64,
};
use crate::{Error, Result};

/// Smallest admissible norm² of the projected state.
pub const MIN_Z: f64 = 1e-14;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub enum Threshold {
    /// The lowest manifold, i.e. `E₀ + degeneracy_tol`.
    #[default]
    GroundManifold,
    /// Every eigenstate with energy `≤ E`.
    Energy(f64),
    /// The lowest `n` distinct manifolds.
    Manifolds(usize),
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::GroundManifold => f.write_str("ground"),
            Threshold::Energy(e) => write!(f, "energy={e}"),
            Threshold::Manifolds(n) => write!(f, "manifolds={n}"),
        }
    }
}

impl std::str::FromStr for Threshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::validation(format!("bad threshold {s:?}; use ground, energy=<E> or manifolds=<n>"));
        match s.split_once('=') {
            None if s == "ground" => Ok(Threshold::GroundManifold),
            Some(("energy", v)) => v.parse().map(Threshold::Energy).map_err(|_| bad()),
            Some(("manifolds", v)) => v.parse().map(Threshold::Manifolds).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CooledState {
    pub state: StateVector,
    /// Effective energy threshold; every retained eigenvalue is `≤` it.
    pub threshold: f64,
    /// `‖P Ψ₀‖²` before renormalization.
    pub z: f64,
    /// `(energy, multiplicity)` of each retained manifold.
    pub manifold_dims: Vec<(f64, usize)>,
}

impl CooledState {
    pub fn retained(&self) -> usize {
        self.manifold_dims.iter().map(|m| m.1).sum()
    }
}

/// Diagonalizes `hamiltonian` and cools `initial`.
pub fn cool(
    hamiltonian: &PauliOperator,
    initial: &StateVector,
    threshold: Threshold,
    cfg: &DenseConfig,
) -> Result<CooledState> {
    let spectrum = diagonalize(hamiltonian, None, cfg)?;
    cool_with_spectrum(&spectrum, initial, threshold)
}

/// Cools into the lowest `manifold_count` manifolds.
pub fn cool_excited(
    hamiltonian: &PauliOperator,
    initial: &StateVector,
    manifold_count: usize,
    cfg: &DenseConfig,
) -> Result<CooledState> {
    cool(hamiltonian, initial, Threshold::Manifolds(manifold_count), cfg)
}

/// Cools against a precomputed spectrum.
pub fn cool_with_spectrum(
    spectrum: &SpectralDecomposition,
    initial: &StateVector,
    threshold: Threshold,
) -> Result<CooledState> {
    if initial.num_sites() != spectrum.num_sites() {
        return Err(Error::validation(format!(
            "initial state has {} sites, Hamiltonian has {}",
            initial.num_sites(),
            spectrum.num_sites()
        )));
    }
    initial.require_normalized("initial state")?;
    let manifolds = spectrum.manifolds();
    let tol = spectrum.degeneracy_tol();
    let (count, energy) = match threshold {
        Threshold::GroundManifold => {
            let g = manifolds[0];
            (g.multiplicity, spectrum.ground_energy() + tol)
        }
        Threshold::Energy(e) => {
            if !e.is_finite() {
                return Err(Error::validation("energy threshold must be finite"));
            }
            (spectrum.count_at_or_below(e), e)
        }
        Threshold::Manifolds(n) => {
            if n == 0 {
                return Err(Error::validation("manifold count must be at least 1"));
            }
            let last = manifolds[n.min(manifolds.len()) - 1];
            let end = last.start + last.multiplicity;
            (end, spectrum.eigenvalues()[end - 1] + tol)
        }
    };

    let mut state = StateVector::zeros(spectrum.num_sites());
    let mut z = 0.0;
    for i in 0..count {
        let c = spectrum.overlap(i, initial);
        z += c.norm_sqr();
        spectrum.accumulate(i, c, &mut state);
    }
    if !(z >= MIN_Z) {
        return Err(Error::OrthogonalInitialState { z });
    }
    let scale = C64::new(1.0 / z.sqrt(), 0.0);
    for a in state.amplitudes_mut() {
        *a *= scale;
    }
    state.normalize()?;
    state.fix_global_phase();

    let manifold_dims = manifolds
        .iter()
        .filter(|m| m.start < count)
        .map(|m| (m.energy, m.multiplicity.min(count - m.start)))
        .collect();
    Ok(CooledState {
        state,
        threshold: energy,
        z: z.min(1.0),
        manifold_dims,
    })
}

/// One entropy report per `(threshold, cut)`, thresholds outermost, using
/// the model's spectrum and, unless given, its default initial state.
pub fn cooled_entropy_scan(
    spec: &ModelSpec,
    initial: Option<&StateVector>,
    thresholds: &[Threshold],
    cuts: &[Bipartition],
    cfg: &DenseConfig,
) -> Result<Vec<EntropyReport>> {
    let spectrum = spec.spectrum(cfg)?;
    let default;
    let initial = match initial {
        Some(s) => s,
        None => {
            default = spec.default_initial_state()?;
            &default
        }
    };
    let mut out = Vec::with_capacity(thresholds.len() * cuts.len());
    for &t in thresholds {
        let cooled = cool_with_spectrum(&spectrum, initial, t)?;
        for cut in cuts {
            let entropy = entanglement_entropy(&cooled.state, cut)?;
            let (lower, upper) = entropy_bounds(spec, cut);
            out.push(EntropyReport {
                z: Some(cooled.z),
                lower,
                upper,
                ..EntropyReport::new(spec, t.to_string(), cut, entropy, Source::Ed)
            });
        }
    }
    Ok(out)
}

/// Result of [`maximize_cut_entropy`].
#[derive(Clone, Debug)]
pub struct OptimizedInitial {
    pub initial: StateVector,
    pub cooled: CooledState,
    pub entropy: f64,
    /// Bloch angles `(θ, φ)` of each free site.
    pub angles: Vec<(f64, f64)>,
}

fn bloch(theta: f64, phi: f64) -> [C64; 2] {
    [
        C64::new((theta / 2.0).cos(), 0.0),
        C64::from_polar((theta / 2.0).sin(), phi),
    ]
}

/// Searches product initial states that agree with `base` except on
/// `free_sites`, whose Bloch angles are varied to maximize the entropy of
/// the cooled state across `cut`.
///
/// A coarse grid over all free angles seeds a compass search that halves its
/// step down to `1e-7` rad. Deterministic.
pub fn maximize_cut_entropy(
    spectrum: &SpectralDecomposition,
    base: &[[C64; 2]],
    free_sites: &[usize],
    threshold: Threshold,
    cut: &Bipartition,
) -> Result<OptimizedInitial> {
    if free_sites.iter().any(|&s| s >= base.len()) {
        return Err(Error::validation("free site out of range"));
    }
    let evaluate = |x: &[f64]| -> Result<(StateVector, CooledState, f64)> {
        let mut sites = base.to_vec();
        for (j, &s) in free_sites.iter().enumerate() {
            sites[s] = bloch(x[2 * j], x[2 * j + 1]);
        }
        let initial = product_state(&sites)?;
        let cooled = cool_with_spectrum(spectrum, &initial, threshold)?;
        let e = entanglement_entropy(&cooled.state, cut)?;
        Ok((initial, cooled, e))
    };
    let score = |x: &[f64]| match evaluate(x) {
        Ok((_, _, e)) => Ok(e),
        Err(Error::OrthogonalInitialState { .. }) => Ok(f64::NEG_INFINITY),
        Err(e) => Err(e),
    };

    let dims = 2 * free_sites.len();
    const GRID: usize = 6;
    let pi = std::f64::consts::PI;
    let mut best = vec![pi / 2.0; dims];
    let mut best_score = score(&best)?;
    let total = GRID.pow(dims as u32);
    let mut x = vec![0.0; dims];
    for idx in 0..total {
        let mut r = idx;
        for (d, xd) in x.iter_mut().enumerate() {
            let g = r % GRID;
            r /= GRID;
            *xd = if d % 2 == 0 {
                (g as f64 + 0.5) * pi / GRID as f64
            } else {
                g as f64 * 2.0 * pi / GRID as f64
            };
        }
        let s = score(&x)?;
        if s > best_score {
            best_score = s;
            best.clone_from(&x);
        }
    }

    let mut step = pi / GRID as f64 / 2.0;
    while step > 1e-7 {
        let mut improved = false;
        for d in 0..dims {
            for dir in [1.0, -1.0] {
                let mut trial = best.clone();
                trial[d] += dir * step;
                let s = score(&trial)?;
                if s > best_score + 1e-15 {
                    best_score = s;
                    best = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    if !best_score.is_finite() {
        return Err(Error::OrthogonalInitialState { z: 0.0 });
    }
    let (initial, cooled, entropy) = evaluate(&best)?;
    Ok(OptimizedInitial {
        initial,
        cooled,
        entropy,
        angles: best.chunks(2).map(|c| (c[0], c[1])).collect(),
    })
}
