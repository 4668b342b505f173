//! Frustration degree: the average, over classical ground configurations of
//! the Ising-limit operator, of (energy of frustrated terms) over |energy of
//! satisfied terms|.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::closed_forms::ising_gas_frustration;
use crate::models::{ModelKind, ModelSpec, Sign};
use crate::spin_core::{Pauli, PauliOperator, PauliString};
use crate::{Error, Result};

/// Largest site count enumerated exhaustively.
pub const ENUMERATION_CAP: usize = 24;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FrustrationMode {
    /// Every non-identity letter becomes `Z`.
    Ising,
    /// Isotropic `XX+YY+ZZ` (or planar `XX+YY`) on a common support
    /// collapses to a single `ZZ` with the shared coefficient; everything
    /// else as in [`FrustrationMode::Ising`].
    #[default]
    ClassicalVector,
}

impl fmt::Display for FrustrationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FrustrationMode::Ising => "ising",
            FrustrationMode::ClassicalVector => "classical-vector",
        })
    }
}

impl std::str::FromStr for FrustrationMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ising" => Ok(FrustrationMode::Ising),
            "classical-vector" => Ok(FrustrationMode::ClassicalVector),
            _ => Err(Error::validation(format!(
                "unknown mode {s:?}, expected ising or classical-vector"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrustrationReport {
    #[serde(rename = "f")]
    pub value: f64,
    pub closed_form: Option<f64>,
    #[serde(rename = "n_ground_configs")]
    pub num_ground_configs: usize,
    pub mode: FrustrationMode,
    #[serde(skip)]
    pub ground_energy: f64,
    #[serde(skip)]
    pub per_config_ratios: Vec<f64>,
    /// Ground configurations as bit patterns, ascending.
    #[serde(skip)]
    pub ground_configs: Vec<usize>,
}

/// [`ising_limit_with`] in classical-vector mode.
pub fn ising_limit(op: &PauliOperator) -> PauliOperator {
    ising_limit_with(op, FrustrationMode::ClassicalVector)
}

/// Rewrites `op` with `Z` letters only and drops constants.
pub fn ising_limit_with(op: &PauliOperator, mode: FrustrationMode) -> PauliOperator {
    let n = op.num_sites();
    let mut out = PauliOperator::new(n);
    let z_string = |support: &[usize]| {
        let letters: Vec<(usize, Pauli)> = support.iter().map(|&s| (s, Pauli::Z)).collect();
        PauliString::from_sparse(n, &letters).expect("support of a valid string")
    };

    // support → coefficient of the uniform-letter strings X…X, Y…Y, Z…Z
    let mut uniform: BTreeMap<Vec<usize>, [Option<f64>; 3]> = BTreeMap::new();
    for (string, coeff) in op.terms() {
        if string.is_identity() {
            continue;
        }
        let support = string.support();
        let letters: Vec<Pauli> = support.iter().map(|&s| string.letters()[s]).collect();
        let slot = match letters[0] {
            Pauli::X => 0,
            Pauli::Y => 1,
            _ => 2,
        };
        let same = letters.iter().all(|&l| l == letters[0]);
        if mode == FrustrationMode::ClassicalVector && same && support.len() >= 2 {
            uniform.entry(support).or_default()[slot] = Some(coeff.re);
        } else {
            let _ = out.add_term(coeff.re, z_string(&support));
        }
    }
    for (support, [x, y, z]) in uniform {
        let string = z_string(&support);
        match (x, y, z) {
            (Some(a), Some(b), Some(c)) if a == b && b == c => {
                let _ = out.add_term(a, string);
            }
            (Some(a), Some(b), None) if a == b => {
                let _ = out.add_term(a, string);
            }
            _ => {
                for c in [x, y, z].into_iter().flatten() {
                    let _ = out.add_term(c, string.clone());
                }
            }
        }
    }
    out
}

struct ZTerm {
    mask: usize,
    coeff: f64,
}

fn term_energy(t: &ZTerm, b: usize) -> f64 {
    if (b & t.mask).count_ones().is_multiple_of(2) {
        t.coeff
    } else {
        -t.coeff
    }
}

/// Frustration degree of `op` by exhaustive enumeration of classical
/// configurations of its Ising limit (Gray-code order, incremental
/// energies; candidate ground energies are recomputed from scratch).
pub fn frustration_degree(op: &PauliOperator, mode: FrustrationMode) -> Result<FrustrationReport> {
    let n = op.num_sites();
    if n > ENUMERATION_CAP {
        return Err(Error::SizeLimit {
            what: "frustration enumeration",
            sites: n,
            limit: ENUMERATION_CAP,
        });
    }
    let limit = ising_limit_with(op, mode);
    let terms: Vec<ZTerm> = limit
        .terms()
        .map(|(s, c)| ZTerm {
            mask: s.sign_mask(),
            coeff: c.re,
        })
        .collect();
    if terms.is_empty() {
        return Err(Error::validation("operator has no non-constant terms"));
    }
    let scale: f64 = terms.iter().map(|t| t.coeff.abs()).sum();
    let by_site: Vec<Vec<usize>> = (0..n)
        .map(|s| (0..terms.len()).filter(|&t| (terms[t].mask >> s) & 1 == 1).collect())
        .collect();

    let candidate_tol = 1e-8 * scale;
    let mut values: Vec<f64> = terms.iter().map(|t| t.coeff).collect();
    let mut energy: f64 = values.iter().sum();
    let mut best = energy;
    let mut candidates = vec![0usize];
    let mut b = 0usize;
    for step in 1usize..1 << n {
        let site = step.trailing_zeros() as usize;
        b ^= 1 << site;
        for &t in &by_site[site] {
            values[t] = -values[t];
            energy += 2.0 * values[t];
        }
        if energy < best - candidate_tol {
            best = energy;
            candidates.clear();
            candidates.push(b);
        } else if energy <= best + candidate_tol {
            best = best.min(energy);
            candidates.push(b);
        }
    }

    let exact: Vec<(usize, f64)> = candidates
        .into_iter()
        .map(|b| (b, terms.iter().map(|t| term_energy(t, b)).sum()))
        .collect();
    let e0 = exact.iter().map(|e| e.1).fold(f64::INFINITY, f64::min);
    let final_tol = 1e-10 * scale.max(1.0);
    let mut ground: Vec<usize> = exact
        .into_iter()
        .filter(|e| e.1 <= e0 + final_tol)
        .map(|e| e.0)
        .collect();
    ground.sort_unstable();

    let mut ratios = Vec::with_capacity(ground.len());
    for &b in &ground {
        let (mut frustrated, mut satisfied) = (0.0, 0.0);
        for t in &terms {
            let e = term_energy(t, b);
            if e > 0.0 {
                frustrated += e;
            } else {
                satisfied += e;
            }
        }
        if satisfied.abs() < 1e-12 {
            return Err(Error::Numerical(format!(
                "configuration {b:#b} has no satisfied term energy"
            )));
        }
        ratios.push(frustrated / satisfied.abs());
    }
    let value = mean(&ratios);
    Ok(FrustrationReport {
        value,
        closed_form: None,
        num_ground_configs: ground.len(),
        mode,
        ground_energy: e0,
        per_config_ratios: ratios,
        ground_configs: ground,
    })
}

/// Mean with equal values pooled first, so a constant list averages to
/// that constant exactly.
fn mean(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let total = sorted.len() as f64;
    sorted
        .chunk_by(|a, b| a == b)
        .map(|run| run[0] * (run.len() as f64 / total))
        .sum()
}

/// Known analytic frustration degree of a model, where one exists.
pub fn closed_form_frustration(spec: &ModelSpec) -> Option<f64> {
    let unfrustrated = spec.sign == Sign::Unfrustrated;
    match spec.kind {
        ModelKind::IsingGas if unfrustrated => Some(0.0),
        ModelKind::IsingGas => Some(ising_gas_frustration(spec.m, spec.lambda)),
        ModelKind::SingleBond if unfrustrated => Some(0.0),
        ModelKind::SingleBond => Some(1.0 / (2 * spec.m - 1) as f64),
        ModelKind::MajumdarGhosh => Some(0.5),
        ModelKind::HeisenbergGas => Some(ising_gas_frustration(spec.m, 0.0)),
        ModelKind::ShastrySutherland => {
            let j2 = spec.j2.unwrap_or(0.0);
            Some(1.0 / (1.0 + 0.5 * j2 / spec.j1))
        }
        ModelKind::Rvb => {
            let zero = |v: Option<f64>| v.unwrap_or(0.0) == 0.0;
            (zero(spec.j2) && zero(spec.j3)).then_some(0.5)
        }
    }
}

/// Classical-vector frustration degree of a model, with its closed form
/// attached when one is known.
pub fn frustration_degree_model(spec: &ModelSpec) -> Result<FrustrationReport> {
    spec.validate()?;
    let mut report = frustration_degree(&spec.hamiltonian()?, FrustrationMode::ClassicalVector)?;
    report.closed_form = closed_form_frustration(spec);
    Ok(report)
}
