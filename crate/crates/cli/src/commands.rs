//! Subcommand implementations. Each returns the artifacts to write.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use frustra::closed_forms::{
    entropy_bounds, heisenberg_gas_bound, heisenberg_gas_schmidt_state, ising_gas_rho_k,
    mg_superposition, rvb_state, shastry_cut_dimers, single_bond_cooled_state,
};
use frustra::cooling::{cool_with_spectrum, maximize_cut_entropy, CooledState, Threshold};
use frustra::frustration::{frustration_degree, frustration_degree_model, FrustrationMode};
use frustra::interference::{
    curve_to_tsv, default_fig1_grid, frustrated_vs_unfrustrated_ratio, heisenberg_gas_interference,
    rvb_interference, rvb_interference_curve, PathShape,
};
use frustra::models::{heisenberg_gas_initial_state, ModelKind, ModelSpec, Sign};
use frustra::report::{param_string, to_csv, EntropyReport, Source};
use frustra::spin_core::{
    entanglement_entropy, product_state, Bipartition, SpectralDecomposition, StateVector, C64,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{parse_grid, parse_real_grid, read_hamiltonian, ModelArgs};
use crate::output::{to_json, Artifact, Format};
use crate::{CliError, Context};

type Artifacts = Vec<Artifact>;

fn single(contents: String) -> Artifacts {
    vec![Artifact { file: "out", contents }]
}

fn require_format(ctx: &Context, allowed: &[Format]) -> Result<(), CliError> {
    if allowed.contains(&ctx.format) {
        Ok(())
    } else {
        let names: Vec<String> = allowed.iter().map(|f| f.to_string()).collect();
        Err(CliError::Usage(format!(
            "format {} is not available here; use {}",
            ctx.format,
            names.join(" or ")
        )))
    }
}

fn reports_out(reports: &[EntropyReport], ctx: &Context) -> Result<Artifacts, CliError> {
    require_format(ctx, &[Format::Csv, Format::Json])?;
    Ok(single(match ctx.format {
        Format::Json => to_json(&reports),
        _ => to_csv(reports),
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceArg {
    Analytic,
    Ed,
}

/// `default` is the model's default product state. `optimized` maximizes the
/// block entropy over the two free sites of the Majumdar-Ghosh initial
/// state. `auto` picks `optimized` for `mg` and `default` otherwise.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialArg {
    #[default]
    Auto,
    Default,
    Optimized,
}

impl InitialArg {
    fn optimize(self, spec: &ModelSpec) -> Result<bool, CliError> {
        let is_mg = spec.kind == ModelKind::MajumdarGhosh;
        match self {
            InitialArg::Auto => Ok(is_mg),
            InitialArg::Default => Ok(false),
            InitialArg::Optimized if is_mg => Ok(true),
            InitialArg::Optimized => Err(CliError::Usage("--initial optimized is only defined for mg".into())),
        }
    }
}

#[derive(Args, Debug, Serialize)]
pub struct ScalingArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Block lengths (sites, or plaquettes for rvb); blocks start at site 0.
    #[arg(long)]
    pub k: String,
    #[arg(long, value_enum, default_value_t = SourceArg::Ed)]
    pub source: SourceArg,
    #[arg(long, value_enum, default_value_t = InitialArg::Auto)]
    pub initial: InitialArg,
}

pub fn scaling(a: &ScalingArgs, ctx: &Context) -> Result<Artifacts, CliError> {
    let specs = a.model.specs()?;
    let ks = parse_grid(&a.k, 1)?;
    // validate the whole grid before computing anything
    for spec in &specs {
        let size = spec.state_sites();
        if let Some(&k) = ks.iter().find(|&&k| k == 0 || k >= size) {
            return Err(CliError::Usage(format!("block length {k} is not within 1..{size} for m={}", spec.m)));
        }
        if a.source == SourceArg::Ed {
            ctx.cfg.check("exact diagonalization", size)?;
        }
    }
    let mut rows = Vec::new();
    for spec in &specs {
        match a.source {
            SourceArg::Analytic => {
                for &k in &ks {
                    rows.push(analytic_row(spec, k, ctx)?);
                }
            }
            SourceArg::Ed => rows.extend(ed_rows(spec, &ks, a.initial, ctx)?),
        }
    }
    reports_out(&rows, ctx)
}

fn analytic_row(spec: &ModelSpec, k: usize, ctx: &Context) -> Result<EntropyReport, CliError> {
    let n = spec.state_sites();
    let cut = Bipartition::contiguous(n, 0, k)?;
    let mut upper = None;
    let entropy = match spec.kind {
        ModelKind::IsingGas if spec.sign == Sign::Frustrated => ising_gas_rho_k(spec.m, spec.lambda, k)?.entropy(),
        ModelKind::HeisenbergGas => {
            if k > spec.m {
                return Err(CliError::Usage(format!("the Schmidt table covers blocks of up to m={} sites", spec.m)));
            }
            upper = Some(heisenberg_gas_bound(k, 0));
            heisenberg_gas_schmidt_state(spec.m, k)?.entropy()
        }
        ModelKind::Rvb => rvb_state(n, spec.vertical_count()?, k)?.entropy(),
        ModelKind::ShastrySutherland => {
            // the dimer product is provably the ground state for j1 ≤ j2/2
            if spec.j1 > spec.j2.unwrap_or(0.0) / 2.0 {
                return Err(CliError::Usage("the dimer-product entropy needs j1 ≤ j2/2".into()));
            }
            shastry_cut_dimers(spec.m, &cut)? as f64
        }
        ModelKind::SingleBond if spec.sign == Sign::Frustrated && spec.flipped_bond.is_none() => {
            ctx.cfg.check("closed-form single-bond state", n)?;
            entanglement_entropy(&single_bond_cooled_state(spec.m)?, &cut)?
        }
        ModelKind::MajumdarGhosh => {
            return Err(CliError::Usage("mg has entropy bounds but no closed-form entropy; use --source ed".into()))
        }
        _ => return Err(CliError::Usage(format!("no closed form for {} with these parameters", spec.kind))),
    };
    Ok(EntropyReport {
        upper,
        ..EntropyReport::new(spec, Threshold::GroundManifold.to_string(), &cut, entropy, Source::Analytic)
    })
}

fn mg_base(m: usize) -> Vec<[C64; 2]> {
    let zero = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    let one = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
    (0..2 * m).map(|i| if i % 2 == 0 { zero } else { one }).collect()
}

fn ed_rows(spec: &ModelSpec, ks: &[usize], initial: InitialArg, ctx: &Context) -> Result<Vec<EntropyReport>, CliError> {
    let spectrum = spec.spectrum(&ctx.cfg)?;
    let n = spec.state_sites();
    let optimize = initial.optimize(spec)?;
    let fixed = if optimize {
        None
    } else {
        Some(cool_with_spectrum(&spectrum, &spec.default_initial_state()?, Threshold::GroundManifold)?)
    };
    let mut rows = Vec::with_capacity(ks.len());
    for &k in ks {
        let cut = Bipartition::contiguous(n, 0, k)?;
        let (cooled, threshold) = match &fixed {
            Some(c) => (c.clone(), "ground".to_string()),
            None => {
                let best = maximize_cut_entropy(
                    &spectrum,
                    &mg_base(spec.m),
                    &[n - 2, n - 1],
                    Threshold::GroundManifold,
                    &cut,
                )?;
                (best.cooled, "ground;optimized".to_string())
            }
        };
        rows.push(ed_report(spec, threshold, &cooled, &cut)?);
    }
    Ok(rows)
}

fn ed_report(spec: &ModelSpec, threshold: String, cooled: &CooledState, cut: &Bipartition) -> Result<EntropyReport, CliError> {
    let entropy = entanglement_entropy(&cooled.state, cut)?;
    let (lower, upper) = entropy_bounds(spec, cut);
    Ok(EntropyReport {
        z: Some(cooled.z),
        lower,
        upper,
        ..EntropyReport::new(spec, threshold, cut, entropy, Source::Ed)
    })
}

#[derive(Args, Debug, Serialize)]
pub struct CoolArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: Option<ModelArgs>,
    /// Hamiltonian in the `<coeff> <string>` text format instead of a model.
    #[arg(long, conflicts_with_all = ["model", "spec"])]
    pub hamiltonian: Option<PathBuf>,
    /// Initial product state, one of `0 1 + -` per site starting at site 0.
    /// Required with --hamiltonian; overrides the model default otherwise.
    #[arg(long)]
    pub product: Option<String>,
    /// `ground`, `energy=<E>` or `manifolds=<n>`; repeatable.
    #[arg(long, default_values_t = vec!["ground".to_string()])]
    pub threshold: Vec<String>,
    /// Contiguous block lengths starting at site 0.
    #[arg(long, conflicts_with = "sites")]
    pub k: Option<String>,
    /// Explicit block, comma-separated site indices.
    #[arg(long)]
    pub sites: Option<String>,
}

fn parse_product(s: &str) -> Result<StateVector, CliError> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let sites = s
        .chars()
        .map(|c| match c {
            '0' => Ok([C64::new(1.0, 0.0), C64::new(0.0, 0.0)]),
            '1' => Ok([C64::new(0.0, 0.0), C64::new(1.0, 0.0)]),
            '+' => Ok([C64::new(h, 0.0), C64::new(h, 0.0)]),
            '-' => Ok([C64::new(h, 0.0), C64::new(-h, 0.0)]),
            _ => Err(CliError::Usage(format!("bad product-state letter {c:?}; use 0, 1, + or -"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(product_state(&sites)?)
}

pub fn cool(a: &CoolArgs, ctx: &Context) -> Result<Artifacts, CliError> {
    let thresholds: Vec<Threshold> = a.threshold.iter().map(|t| t.parse()).collect::<Result<_, _>>()?;
    let spec = match (&a.hamiltonian, &a.model) {
        (Some(_), _) => None,
        (None, Some(m)) => Some(m.single_spec()?),
        (None, None) => return Err(CliError::Usage("need a model or --hamiltonian".into())),
    };
    let (spectrum, initial, model, params): (SpectralDecomposition, StateVector, String, String) = match &spec {
        None => {
            let path = a.hamiltonian.as_ref().expect("checked above");
            let h = read_hamiltonian(path)?;
            let product = a
                .product
                .as_deref()
                .ok_or_else(|| CliError::Usage("--hamiltonian needs --product".into()))?;
            let initial = parse_product(product)?;
            let spectrum = frustra::spin_core::diagonalize(&h, None, &ctx.cfg)?;
            (spectrum, initial, "custom".into(), format!("file={}", path.display()))
        }
        Some(spec) => {
            let initial = match &a.product {
                Some(p) => parse_product(p)?,
                None => spec.default_initial_state()?,
            };
            (spec.spectrum(&ctx.cfg)?, initial, spec.kind.to_string(), param_string(spec))
        }
    };
    let n = spectrum.num_sites();
    let cuts: Vec<Bipartition> = match (&a.k, &a.sites) {
        (_, Some(s)) => vec![Bipartition::new(n, parse_grid(s, 1)?)?],
        (Some(k), None) => parse_grid(k, 1)?
            .into_iter()
            .map(|k| Bipartition::contiguous(n, 0, k))
            .collect::<Result<_, _>>()?,
        (None, None) => vec![Bipartition::contiguous(n, 0, n / 2)?],
    };
    let mut rows = Vec::new();
    for t in thresholds {
        let cooled = cool_with_spectrum(&spectrum, &initial, t)?;
        for cut in &cuts {
            let entropy = entanglement_entropy(&cooled.state, cut)?;
            let (lower, upper) = spec.as_ref().map(|s| entropy_bounds(s, cut)).unwrap_or((None, None));
            rows.push(EntropyReport {
                model: model.clone(),
                params: params.clone(),
                threshold: t.to_string(),
                k: cut.len(),
                cut_spec: cut.to_string(),
                entropy,
                z: Some(cooled.z),
                source: Source::Ed,
                size: n,
                lower,
                upper,
                e_avg: None,
            });
        }
    }
    reports_out(&rows, ctx)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Ising,
    ClassicalVector,
}

#[derive(Args, Debug, Serialize)]
pub struct FrustrationArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: Option<ModelArgs>,
    #[arg(long, conflicts_with_all = ["model", "spec"])]
    pub hamiltonian: Option<PathBuf>,
    /// How non-Ising terms are reduced; only used with --hamiltonian.
    #[arg(long, value_enum, default_value_t = ModeArg::ClassicalVector)]
    pub mode: ModeArg,
}

pub fn frustration(a: &FrustrationArgs, ctx: &Context) -> Result<Artifacts, CliError> {
    require_format(ctx, &[Format::Json])?;
    let report = match (&a.hamiltonian, &a.model) {
        (Some(path), _) => {
            let mode = match a.mode {
                ModeArg::Ising => FrustrationMode::Ising,
                ModeArg::ClassicalVector => FrustrationMode::ClassicalVector,
            };
            frustration_degree(&read_hamiltonian(path)?, mode)?
        }
        (None, Some(m)) => frustration_degree_model(&m.single_spec()?)?,
        (None, None) => return Err(CliError::Usage("need a model or --hamiltonian".into())),
    };
    Ok(single(to_json(&report)))
}

#[derive(Args, Debug, Serialize)]
pub struct InterferenceArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Boundary shape for rvb.
    #[arg(long, value_enum, default_value_t = PathArg::Square)]
    pub path: PathArg,
    /// Block length for the Heisenberg gas and the frustrated-vs-unfrustrated comparison.
    #[arg(long)]
    pub k: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PathArg {
    Square,
    Horizontal,
    Vertical,
}

impl From<PathArg> for PathShape {
    fn from(p: PathArg) -> Self {
        match p {
            PathArg::Square => PathShape::Square,
            PathArg::Horizontal => PathShape::Horizontal,
            PathArg::Vertical => PathShape::Vertical,
        }
    }
}

pub fn interference(a: &InterferenceArgs, ctx: &Context) -> Result<Artifacts, CliError> {
    require_format(ctx, &[Format::Json])?;
    let report = if a.model.model.as_deref() == Some("rvb") && a.model.m.is_none() {
        let d = a
            .model
            .density
            .ok_or_else(|| CliError::Usage("rvb interference needs --density".into()))?;
        rvb_interference(d, PathShape::from(a.path).path())?
    } else {
        let spec = a.model.single_spec()?;
        let k = a.k.unwrap_or(spec.state_sites() / 2);
        match spec.kind {
            ModelKind::Rvb => rvb_interference(spec.density.unwrap_or(0.5), PathShape::from(a.path).path())?,
            ModelKind::HeisenbergGas => heisenberg_gas_interference(spec.m, k, &ctx.cfg)?,
            ModelKind::IsingGas | ModelKind::SingleBond => {
                let fr = ModelSpec { sign: Sign::Frustrated, ..spec.clone() };
                let unfr = ModelSpec {
                    sign: Sign::Unfrustrated,
                    flipped_bond: None,
                    ..spec.clone()
                };
                let cut = Bipartition::contiguous(spec.num_sites(), 0, k)?;
                frustrated_vs_unfrustrated_ratio(&fr, &unfr, &cut, &ctx.cfg)?
            }
            other => return Err(CliError::Usage(format!("no interference comparison is defined for {other}"))),
        }
    };
    Ok(single(to_json(&report)))
}

#[derive(Args, Debug, Serialize)]
pub struct Fig1Args {
    /// Densities, `lo..hi:step` or a comma list; default 0.02..0.98:0.02.
    #[arg(long)]
    pub grid: Option<String>,
}

pub fn fig1(a: &Fig1Args, ctx: &Context) -> Result<Artifacts, CliError> {
    require_format(ctx, &[Format::Tsv])?;
    let grid = match &a.grid {
        Some(g) => parse_real_grid(g)?,
        None => default_fig1_grid(),
    };
    if let Some(d) = grid.iter().find(|d| !(**d > 0.0 && **d < 1.0)) {
        return Err(CliError::Usage(format!("densities must lie strictly inside (0, 1), got {d}")));
    }
    Ok(vec![
        Artifact {
            file: "square.tsv",
            contents: curve_to_tsv(&rvb_interference_curve(PathShape::Square, &grid)?),
        },
        Artifact {
            file: "horizontal.tsv",
            contents: curve_to_tsv(&rvb_interference_curve(PathShape::Horizontal, &grid)?),
        },
    ])
}

#[derive(Args, Debug, Serialize)]
pub struct BoundsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub model: ModelArgs,
    /// Random states per size.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
}

fn random_qubit(rng: &mut ChaCha8Rng) -> [C64; 2] {
    let mut c = || C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
    [c(), c()]
}

/// Mg: random `a|G+⟩ + b|G−⟩` on every contiguous cut. Heisenberg gas:
/// random product states cooled to the ground manifold, every contiguous
/// cut. Writes all rows, then fails with exit code 3 if any row violates
/// its bounds by more than `1e-9`.
pub fn bounds_check(a: &BoundsArgs, ctx: &Context) -> Result<(Artifacts, Result<(), CliError>), CliError> {
    const SLACK: f64 = 1e-9;
    let specs = a.model.specs()?;
    for spec in &specs {
        if !matches!(spec.kind, ModelKind::MajumdarGhosh | ModelKind::HeisenbergGas) {
            return Err(CliError::Usage(format!("{} has no entropy bounds to check", spec.kind)));
        }
        ctx.cfg.check("bounds check", spec.num_sites())?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut rows = Vec::new();
    for spec in &specs {
        let n = spec.num_sites();
        let spectrum = match spec.kind {
            ModelKind::HeisenbergGas => Some(spec.spectrum(&ctx.cfg)?),
            _ => None,
        };
        for sample in 0..a.samples {
            let state = match &spectrum {
                None => {
                    let [x, y] = random_qubit(&mut rng);
                    mg_superposition(spec.m, x, y)?
                }
                Some(s) => {
                    let init = heisenberg_gas_initial_state(spec.m, random_qubit(&mut rng), random_qubit(&mut rng))?
                        .normalized()?;
                    cool_with_spectrum(s, &init, Threshold::GroundManifold)?.state
                }
            };
            for start in 0..n {
                for k in 1..n {
                    let cut = Bipartition::contiguous(n, start, k)?;
                    let entropy = entanglement_entropy(&state, &cut)?;
                    let (lower, upper) = entropy_bounds(spec, &cut);
                    rows.push(EntropyReport {
                        lower,
                        upper,
                        ..EntropyReport::new(spec, format!("sample={sample}"), &cut, entropy, Source::Ed)
                    });
                }
            }
        }
    }
    let violations = rows
        .iter()
        .filter(|r| r.lower.is_some_and(|lo| r.entropy < lo - SLACK) || r.upper.is_some_and(|hi| r.entropy > hi + SLACK))
        .count();
    let outcome = if violations == 0 {
        Ok(())
    } else {
        Err(CliError::Violations(format!("{violations} of {} cuts violate their bounds", rows.len())))
    };
    Ok((reports_out(&rows, ctx)?, outcome))
}
