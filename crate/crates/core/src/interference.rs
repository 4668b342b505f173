//! Entanglement interference: the entropy of a superposition compared with
//! the average entropy of its labeled components.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::closed_forms::{rvb_boundary_law, BoundaryPath};
use crate::cooling::{cool_with_spectrum, Threshold};
use crate::models::ModelSpec;
use crate::spin_core::{entanglement_entropy, singlet_product, Bipartition, DenseConfig, StateVector};
use crate::{Error, Result};

/// Ratios within this distance of 1 are marginal.
pub const VERDICT_TOL: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Constructive,
    Destructive,
    Marginal,
}

impl Verdict {
    pub fn from_ratio(ratio: f64) -> Self {
        if ratio > 1.0 + VERDICT_TOL {
            Verdict::Constructive
        } else if ratio < 1.0 - VERDICT_TOL {
            Verdict::Destructive
        } else {
            Verdict::Marginal
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Constructive => "constructive",
            Verdict::Destructive => "destructive",
            Verdict::Marginal => "marginal",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct InterferenceReport {
    pub e_super: f64,
    pub e_avg: f64,
    pub ratio: f64,
    pub verdict: Verdict,
}

impl InterferenceReport {
    /// Fails with [`Error::Incomparable`] when `e_avg` vanishes.
    pub fn new(e_super: f64, e_avg: f64) -> Result<Self> {
        if !(e_avg.abs() > 1e-12) {
            return Err(Error::Incomparable(format!(
                "reference entropy is {e_avg}, the ratio is undefined"
            )));
        }
        let ratio = e_super / e_avg;
        Ok(Self {
            e_super,
            e_avg,
            ratio,
            verdict: Verdict::from_ratio(ratio),
        })
    }
}

/// `Ē(d) = 2hd + 2v(1−d)`.
pub fn rvb_average_entropy(d: f64, path: BoundaryPath) -> Result<f64> {
    if !(0.0..=1.0).contains(&d) {
        return Err(Error::validation(format!("density must lie in [0, 1], got {d}")));
    }
    Ok(2.0 * path.h as f64 * d + 2.0 * path.v as f64 * (1.0 - d))
}

/// Boundary law over the average entropy, `[hE_pl(d) + vE_pl(1−d)] / Ē(d)`.
pub fn rvb_interference(d: f64, path: BoundaryPath) -> Result<InterferenceReport> {
    let e_avg = rvb_average_entropy(d, path)?;
    InterferenceReport::new(rvb_boundary_law(d, path)?, e_avg)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PathShape {
    /// Equal numbers of horizontal and vertical crossings.
    Square,
    /// Horizontal crossings only.
    Horizontal,
    /// Vertical crossings only.
    Vertical,
}

impl PathShape {
    pub fn path(self) -> BoundaryPath {
        match self {
            PathShape::Square => BoundaryPath { h: 1, v: 1 },
            PathShape::Horizontal => BoundaryPath { h: 1, v: 0 },
            PathShape::Vertical => BoundaryPath { h: 0, v: 1 },
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PathShape::Square => "square",
            PathShape::Horizontal => "horizontal",
            PathShape::Vertical => "vertical",
        }
    }
}

impl std::str::FromStr for PathShape {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "square" => Ok(PathShape::Square),
            "horizontal" => Ok(PathShape::Horizontal),
            "vertical" => Ok(PathShape::Vertical),
            _ => Err(Error::validation(format!(
                "unknown path shape {s:?}, expected square, horizontal or vertical"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurvePoint {
    pub d: f64,
    /// `None` when `Ē(d) = 0`.
    pub ratio: Option<f64>,
}

impl CurvePoint {
    pub fn skipped(&self) -> bool {
        self.ratio.is_none()
    }
}

/// `d = 0.02, 0.04, …, 0.98`.
pub fn default_fig1_grid() -> Vec<f64> {
    (1..50).map(|i| i as f64 / 50.0).collect()
}

/// Interference ratio along a `d` grid inside `(0, 1)`.
pub fn rvb_interference_curve(shape: PathShape, grid: &[f64]) -> Result<Vec<CurvePoint>> {
    let path = shape.path();
    grid.iter()
        .map(|&d| {
            if !(d > 0.0 && d < 1.0) {
                return Err(Error::validation(format!("grid point {d} is outside (0, 1)")));
            }
            match rvb_interference(d, path) {
                Ok(r) => Ok(CurvePoint { d, ratio: Some(r.ratio) }),
                Err(Error::Incomparable(_)) => Ok(CurvePoint { d, ratio: None }),
                Err(e) => Err(e),
            }
        })
        .collect()
}

/// `d<TAB>ratio` lines; skipped points are omitted.
pub fn curve_to_tsv(points: &[CurvePoint]) -> String {
    let mut out = String::from("d\tratio\n");
    for p in points {
        if let Some(r) = p.ratio {
            out.push_str(&format!("{}\t{}\n", p.d, r));
        }
    }
    out
}

/// `Σ w_i S(tr |c_i⟩⟨c_i|)` across `cut`; uniform weights when `None`.
pub fn component_average_entropy(
    components: &[StateVector],
    weights: Option<&[f64]>,
    cut: &Bipartition,
) -> Result<f64> {
    if components.is_empty() {
        return Err(Error::validation("need at least one component"));
    }
    let uniform;
    let weights = match weights {
        Some(w) => {
            if w.len() != components.len() {
                return Err(Error::validation("one weight per component required"));
            }
            if w.iter().any(|&x| !(x >= 0.0)) || (w.iter().sum::<f64>() - 1.0).abs() > 1e-12 {
                return Err(Error::validation("weights must be nonnegative and sum to 1"));
            }
            w
        }
        None => {
            uniform = vec![1.0 / components.len() as f64; components.len()];
            &uniform[..]
        }
    };
    let mut acc = 0.0;
    for (c, w) in components.iter().zip(weights) {
        acc += w * entanglement_entropy(c, cut)?;
    }
    Ok(acc)
}

/// Compares the cooled-state entropy of a frustrated model with that of its
/// unfrustrated counterpart (same spec up to the coupling sign), both cooled
/// into the ground manifold from their default initial states.
pub fn frustrated_vs_unfrustrated_ratio(
    frustrated: &ModelSpec,
    unfrustrated: &ModelSpec,
    cut: &Bipartition,
    cfg: &DenseConfig,
) -> Result<InterferenceReport> {
    let strip = |s: &ModelSpec| ModelSpec {
        sign: Default::default(),
        j1: s.j1.abs(),
        flipped_bond: None,
        ..s.clone()
    };
    if strip(frustrated) != strip(unfrustrated) {
        return Err(Error::validation("specs must differ only in the coupling sign"));
    }
    let entropy = |spec: &ModelSpec| -> Result<f64> {
        let spectrum = spec.spectrum(cfg)?;
        let cooled = cool_with_spectrum(&spectrum, &spec.default_initial_state()?, Threshold::GroundManifold)?;
        entanglement_entropy(&cooled.state, cut)
    };
    InterferenceReport::new(entropy(frustrated)?, entropy(unfrustrated)?)
}

/// All `m!` singlet coverings of the Heisenberg gas: black site `i` paired
/// with white site `m + π(i)` for every permutation `π`, in lexicographic
/// order of `π`.
pub fn heisenberg_gas_coverings(m: usize) -> Result<Vec<StateVector>> {
    if m == 0 || m > 6 {
        return Err(Error::validation(format!("covering enumeration supports 1 ≤ m ≤ 6, got {m}")));
    }
    let mut perm: Vec<usize> = (0..m).collect();
    let mut out = Vec::new();
    loop {
        let pairs: Vec<(usize, usize)> = perm.iter().enumerate().map(|(i, &p)| (i, m + p)).collect();
        out.push(singlet_product(2 * m, &pairs)?);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(out)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = p.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = p.iter().rposition(|&x| x > p[i]).expect("pivot has a successor");
    p.swap(i, j);
    p[i + 1..].reverse();
    true
}

/// Cooled Heisenberg-gas entropy of the block `0..k` against the average
/// over singlet coverings.
pub fn heisenberg_gas_interference(m: usize, k: usize, cfg: &DenseConfig) -> Result<InterferenceReport> {
    let spec = ModelSpec::heisenberg_gas(m);
    let cut = Bipartition::contiguous(2 * m, 0, k)?;
    let spectrum = spec.spectrum(cfg)?;
    let cooled = cool_with_spectrum(&spectrum, &spec.default_initial_state()?, Threshold::GroundManifold)?;
    let e_super = entanglement_entropy(&cooled.state, &cut)?;
    let e_avg = component_average_entropy(&heisenberg_gas_coverings(m)?, None, &cut)?;
    InterferenceReport::new(e_super, e_avg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::{mg_dimer_state, rvb_plaquette_entropy};

    #[test]
    fn verdicts() {
        assert_eq!(Verdict::from_ratio(1.5), Verdict::Constructive);
        assert_eq!(Verdict::from_ratio(0.5), Verdict::Destructive);
        assert_eq!(Verdict::from_ratio(1.0 + 5e-7), Verdict::Marginal);
        assert!(matches!(InterferenceReport::new(1.0, 0.0), Err(Error::Incomparable(_))));
    }

    #[test]
    fn average_entropy_values() {
        let p = BoundaryPath::new(2, 2).unwrap();
        assert_eq!(rvb_average_entropy(0.5, p).unwrap(), 4.0);
        assert_eq!(rvb_average_entropy(0.0, BoundaryPath::new(3, 0).unwrap()).unwrap(), 0.0);
        assert_eq!(rvb_average_entropy(1.0, BoundaryPath::new(0, 3).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn square_curve_peak() {
        let pts = rvb_interference_curve(PathShape::Square, &default_fig1_grid()).unwrap();
        assert_eq!(pts.len(), 49);
        let mid = pts[24];
        assert_eq!(mid.d, 0.5);
        assert!((mid.ratio.unwrap() - rvb_plaquette_entropy(0.5).unwrap()).abs() < 1e-15);
        assert!(rvb_interference_curve(PathShape::Square, &[0.0]).is_err());
    }

    #[test]
    fn tsv_layout() {
        let pts = rvb_interference_curve(PathShape::Horizontal, &[0.25, 0.5]).unwrap();
        let tsv = curve_to_tsv(&pts);
        assert!(tsv.starts_with("d\tratio\n0.25\t"));
        assert_eq!(tsv.lines().count(), 3);
    }

    #[test]
    fn mg_components_average_to_one() {
        let comps = [mg_dimer_state(4, true).unwrap(), mg_dimer_state(4, false).unwrap()];
        for k in 1..8 {
            let cut = Bipartition::contiguous(8, 2, k).unwrap();
            let avg = component_average_entropy(&comps, None, &cut).unwrap();
            assert!((avg - 1.0).abs() < 1e-10, "k={k}");
        }
    }

    #[test]
    fn single_component_is_exact() {
        let g = mg_dimer_state(3, true).unwrap();
        let cut = Bipartition::contiguous(6, 0, 3).unwrap();
        assert_eq!(
            component_average_entropy(std::slice::from_ref(&g), None, &cut).unwrap(),
            entanglement_entropy(&g, &cut).unwrap()
        );
    }

    #[test]
    fn covering_counts() {
        assert_eq!(heisenberg_gas_coverings(3).unwrap().len(), 6);
        assert_eq!(heisenberg_gas_coverings(4).unwrap().len(), 24);
        assert!(heisenberg_gas_coverings(7).is_err());
    }
}
