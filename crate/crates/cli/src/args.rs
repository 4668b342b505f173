//! Shared argument groups and grid parsing.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use frustra::models::{ModelKind, ModelSpec, Sign};
use frustra::spin_core::PauliOperator;
use serde::Serialize;

use crate::CliError;

/// Parses `5`, `1..200` (inclusive), `1..200:5` or `2,4,8`. A bare range
/// advances by `default_step`.
pub fn parse_grid(s: &str, default_step: usize) -> Result<Vec<usize>, CliError> {
    let bad = |why: &str| CliError::Usage(format!("bad grid {s:?}: {why}"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad("not an integer"));
    let mut out = Vec::new();
    for part in s.split(',') {
        match part.split_once("..") {
            None => out.push(num(part)?),
            Some((lo, rest)) => {
                let (hi, step) = match rest.split_once(':') {
                    Some((hi, st)) => (num(hi)?, num(st)?),
                    None => (num(rest)?, default_step),
                };
                let lo = num(lo)?;
                if step == 0 {
                    return Err(bad("step must be positive"));
                }
                if hi < lo {
                    return Err(bad("empty range"));
                }
                out.extend((lo..=hi).step_by(step));
            }
        }
    }
    Ok(out)
}

/// Comma list of reals, or `lo..hi:step` with the endpoints included up to
/// rounding.
pub fn parse_real_grid(s: &str) -> Result<Vec<f64>, CliError> {
    let bad = |why: &str| CliError::Usage(format!("bad grid {s:?}: {why}"));
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad("not a number"));
    if let Some((lo, rest)) = s.split_once("..") {
        let (hi, step) = rest.split_once(':').ok_or_else(|| bad("ranges need a step, lo..hi:step"))?;
        let (lo, hi, step) = (num(lo)?, num(hi)?, num(step)?);
        if !(step > 0.0) || hi < lo {
            return Err(bad("need lo ≤ hi and a positive step"));
        }
        let count = ((hi - lo) / step + 1e-9).floor() as usize;
        return Ok((0..=count).map(|i| lo + i as f64 * step).collect());
    }
    s.split(',').map(num).collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignArg {
    #[default]
    Frustrated,
    Unfrustrated,
}

/// Which model to build. Either `--spec` or `--model` with its parameters.
#[derive(Args, Clone, Debug, Serialize)]
pub struct ModelArgs {
    /// ising-gas, heisenberg-gas, rvb, shastry-sutherland, mg or single-bond.
    #[arg(long)]
    pub model: Option<String>,
    /// JSON model description, as written into run manifests.
    #[arg(long, conflicts_with = "model")]
    pub spec: Option<PathBuf>,
    /// Size parameter m (pairs, or lattice side for rvb and shastry-sutherland).
    #[arg(long)]
    pub m: Option<String>,
    /// Number of sites for chain models; bare ranges step by 2.
    #[arg(long, conflicts_with = "m")]
    pub n: Option<String>,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub j1: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub j2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub j3: Option<f64>,
    /// Vertical-plaquette density of the RVB model.
    #[arg(long)]
    pub density: Option<f64>,
    #[arg(long, value_enum, default_value_t = SignArg::Frustrated)]
    pub sign: SignArg,
    #[arg(long)]
    pub flipped_bond: Option<usize>,
}

impl ModelArgs {
    pub fn specs(&self) -> Result<Vec<ModelSpec>, CliError> {
        if let Some(path) = &self.spec {
            let text = std::fs::read_to_string(path)?;
            let spec: ModelSpec = serde_json::from_str(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            spec.validate()?;
            return Ok(vec![spec]);
        }
        let kind: ModelKind = self
            .model
            .as_deref()
            .ok_or_else(|| CliError::Usage("one of --model or --spec is required".into()))?
            .parse()?;
        let lattice = matches!(kind, ModelKind::Rvb | ModelKind::ShastrySutherland);
        let ms = match (&self.m, &self.n) {
            (Some(m), _) => parse_grid(m, 1)?,
            (None, Some(_)) if lattice => {
                return Err(CliError::Usage(format!("{kind} is sized by its lattice side; use --m")))
            }
            (None, Some(n)) => parse_grid(n, 2)?
                .into_iter()
                .map(|n| {
                    if n % 2 == 0 {
                        Ok(n / 2)
                    } else {
                        Err(CliError::Usage(format!("{kind} needs an even number of sites, got {n}")))
                    }
                })
                .collect::<Result<_, _>>()?,
            (None, None) => return Err(CliError::Usage("one of --m or --n is required".into())),
        };
        ms.into_iter()
            .map(|m| {
                let spec = ModelSpec {
                    lambda: self.lambda,
                    j1: self.j1,
                    j2: self.j2,
                    j3: self.j3,
                    flipped_bond: self.flipped_bond,
                    sign: match self.sign {
                        SignArg::Frustrated => Sign::Frustrated,
                        SignArg::Unfrustrated => Sign::Unfrustrated,
                    },
                    density: self.density,
                    ..ModelSpec::new(kind, m)
                };
                spec.validate()?;
                Ok(spec)
            })
            .collect()
    }

    pub fn single_spec(&self) -> Result<ModelSpec, CliError> {
        let mut specs = self.specs()?;
        if specs.len() != 1 {
            return Err(CliError::Usage("this subcommand takes a single size, not a grid".into()));
        }
        Ok(specs.remove(0))
    }
}

pub fn read_hamiltonian(path: &PathBuf) -> Result<PauliOperator, CliError> {
    Ok(PauliOperator::parse_text(&std::fs::read_to_string(path)?)?)
}
