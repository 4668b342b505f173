use nalgebra::linalg::SymmetricEigen;
use nalgebra::DMatrix;

use super::{PauliOperator, StateVector, C64};
use crate::{Error, Result};

/// Largest site count for dense work unless overridden.
pub const DEFAULT_DENSE_CAP: usize = 14;

/// Environment variable that overrides [`DEFAULT_DENSE_CAP`].
pub const DENSE_CAP_ENV: &str = "FRUSTRA_DENSE_CAP";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DenseConfig {
    pub max_sites: usize,
}

impl Default for DenseConfig {
    fn default() -> Self {
        Self {
            max_sites: DEFAULT_DENSE_CAP,
        }
    }
}

impl DenseConfig {
    pub fn with_cap(max_sites: usize) -> Self {
        Self { max_sites }
    }

    /// Default cap, overridden by `FRUSTRA_DENSE_CAP` when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(DENSE_CAP_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(Self::with_cap)
                .map_err(|_| Error::validation(format!("{DENSE_CAP_ENV}={v:?} is not a site count"))),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn check(&self, what: &'static str, sites: usize) -> Result<()> {
        if sites > self.max_sites {
            Err(Error::SizeLimit {
                what,
                sites,
                limit: self.max_sites,
            })
        } else {
            Ok(())
        }
    }
}

/// Dense `2^N × 2^N` matrix of `Σ coeff · ⊗ Pauli`.
pub fn build_dense(op: &PauliOperator, cfg: &DenseConfig) -> Result<DMatrix<C64>> {
    cfg.check("dense operator", op.num_sites())?;
    let dim = 1usize << op.num_sites();
    let mut m = DMatrix::<C64>::zeros(dim, dim);
    let mut col = Vec::new();
    for b in 0..dim {
        op.column(b, &mut col);
        for &(r, v) in &col {
            m[(r, b)] += v;
        }
    }
    Ok(m)
}

/// A run of eigenvalues treated as one degenerate energy level.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Manifold {
    /// Lowest eigenvalue in the run.
    pub energy: f64,
    /// Index of the first eigenpair in the run.
    pub start: usize,
    pub multiplicity: usize,
}

impl Manifold {
    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.start + self.multiplicity
    }
}

/// `1e-9 ×` spectral range, or `1e-9 × max(|E|, 1)` for a flat spectrum.
pub fn default_degeneracy_tol(eigenvalues: &[f64]) -> f64 {
    let lo = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = eigenvalues.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let range = hi - lo;
    if range > 0.0 {
        1e-9 * range
    } else {
        1e-9 * lo.abs().max(1.0)
    }
}

/// Full eigendecomposition with ascending eigenvalues.
///
/// The matrix is first split into the connected components of its
/// off-diagonal sparsity graph (symmetry sectors such as fixed total S^z
/// fall out automatically), and each block is diagonalized densely. The
/// eigenvectors are stored block-locally.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    num_sites: usize,
    eigenvalues: Vec<f64>,
    vectors: Vec<(usize, Vec<C64>)>,
    blocks: Vec<Vec<usize>>,
    degeneracy_tol: f64,
    manifolds: Vec<Manifold>,
}

impl SpectralDecomposition {
    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    pub fn dim(&self) -> usize {
        1 << self.num_sites
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn degeneracy_tol(&self) -> f64 {
        self.degeneracy_tol
    }

    pub fn manifolds(&self) -> &[Manifold] {
        &self.manifolds
    }

    pub fn ground_energy(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn ground_manifold(&self) -> Manifold {
        self.manifolds[0]
    }

    pub fn eigenvector(&self, i: usize) -> StateVector {
        let mut v = StateVector::zeros(self.num_sites);
        self.accumulate(i, C64::new(1.0, 0.0), &mut v);
        v
    }

    /// `⟨v_i|ψ⟩`.
    pub fn overlap(&self, i: usize, state: &StateVector) -> C64 {
        let (block, coeffs) = &self.vectors[i];
        let amps = state.amplitudes();
        self.blocks[*block]
            .iter()
            .zip(coeffs)
            .map(|(&idx, c)| c.conj() * amps[idx])
            .sum()
    }

    /// `target += factor · |v_i⟩`.
    pub fn accumulate(&self, i: usize, factor: C64, target: &mut StateVector) {
        let (block, coeffs) = &self.vectors[i];
        let amps = target.amplitudes_mut();
        for (&idx, c) in self.blocks[*block].iter().zip(coeffs) {
            amps[idx] += factor * c;
        }
    }

    /// Dense `Σ E_i |v_i⟩⟨v_i|`, for checks at small sizes.
    pub fn reconstruct(&self) -> DMatrix<C64> {
        let dim = self.dim();
        let mut m = DMatrix::<C64>::zeros(dim, dim);
        for (i, (block, coeffs)) in self.vectors.iter().enumerate() {
            let idx = &self.blocks[*block];
            for (a, ca) in idx.iter().zip(coeffs) {
                for (b, cb) in idx.iter().zip(coeffs) {
                    m[(*a, *b)] += ca * cb.conj() * self.eigenvalues[i];
                }
            }
        }
        m
    }

    /// Number of eigenpairs whose energy is `≤ threshold`.
    pub fn count_at_or_below(&self, threshold: f64) -> usize {
        self.eigenvalues.partition_point(|&e| e <= threshold)
    }
}

/// Diagonalizes a Hermitian Pauli operator. `degeneracy_tol = None` uses
/// [`default_degeneracy_tol`].
pub fn diagonalize(
    op: &PauliOperator,
    degeneracy_tol: Option<f64>,
    cfg: &DenseConfig,
) -> Result<SpectralDecomposition> {
    cfg.check("diagonalization", op.num_sites())?;
    if !op.is_hermitian() {
        return Err(Error::validation(
            "operator has complex coefficients and is not Hermitian",
        ));
    }
    let dim = 1usize << op.num_sites();
    let mut columns = Vec::with_capacity(dim);
    let mut col = Vec::new();
    for b in 0..dim {
        op.column(b, &mut col);
        columns.push(col.clone());
    }
    decompose(op.num_sites(), columns, degeneracy_tol)
}

/// Diagonalizes an explicit Hermitian matrix of dimension `2^N`.
pub fn diagonalize_matrix(
    h: &DMatrix<C64>,
    degeneracy_tol: Option<f64>,
    cfg: &DenseConfig,
) -> Result<SpectralDecomposition> {
    let dim = h.nrows();
    if dim != h.ncols() || !dim.is_power_of_two() {
        return Err(Error::validation(format!(
            "matrix is {}×{}, expected square with power-of-two dimension",
            h.nrows(),
            h.ncols()
        )));
    }
    let num_sites = dim.trailing_zeros() as usize;
    cfg.check("diagonalization", num_sites)?;
    let scale = h.iter().map(|v| v.norm()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
    let skew = (h - h.adjoint()).iter().map(|v| v.norm()).fold(0.0, f64::max);
    if skew > 1e-12 * scale {
        return Err(Error::validation(format!(
            "matrix is not Hermitian (deviation {skew:e})"
        )));
    }
    let columns = (0..dim)
        .map(|b| {
            (0..dim)
                .filter(|&r| h[(r, b)].norm() > 0.0)
                .map(|r| (r, h[(r, b)]))
                .collect()
        })
        .collect();
    decompose(num_sites, columns, degeneracy_tol)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn decompose(
    num_sites: usize,
    columns: Vec<Vec<(usize, C64)>>,
    degeneracy_tol: Option<f64>,
) -> Result<SpectralDecomposition> {
    let dim = columns.len();
    let mut parent: Vec<usize> = (0..dim).collect();
    for (b, col) in columns.iter().enumerate() {
        for &(r, _) in col {
            let (x, y) = (find(&mut parent, r), find(&mut parent, b));
            if x != y {
                parent[x.max(y)] = x.min(y);
            }
        }
    }
    // blocks ordered by smallest member, members ascending
    let mut block_of_root = vec![usize::MAX; dim];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut position = vec![0usize; dim];
    for i in 0..dim {
        let root = find(&mut parent, i);
        if block_of_root[root] == usize::MAX {
            block_of_root[root] = blocks.len();
            blocks.push(Vec::new());
        }
        let blk = &mut blocks[block_of_root[root]];
        position[i] = blk.len();
        blk.push(i);
    }

    let mut pairs: Vec<(f64, usize, Vec<C64>)> = Vec::with_capacity(dim);
    for (bid, members) in blocks.iter().enumerate() {
        let n = members.len();
        let mut local = DMatrix::<C64>::zeros(n, n);
        for (j, &b) in members.iter().enumerate() {
            for &(r, v) in &columns[b] {
                local[(position[r], j)] += v;
            }
        }
        for (e, v) in block_eigen(local)? {
            pairs.push((e, bid, v));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));

    let eigenvalues: Vec<f64> = pairs.iter().map(|p| p.0).collect();
    let tol = degeneracy_tol.unwrap_or_else(|| default_degeneracy_tol(&eigenvalues));
    let mut manifolds: Vec<Manifold> = Vec::new();
    for (i, &e) in eigenvalues.iter().enumerate() {
        match manifolds.last_mut() {
            Some(m) if e - m.energy <= tol => m.multiplicity += 1,
            _ => manifolds.push(Manifold {
                energy: e,
                start: i,
                multiplicity: 1,
            }),
        }
    }
    Ok(SpectralDecomposition {
        num_sites,
        eigenvalues,
        vectors: pairs.into_iter().map(|(_, b, v)| (b, v)).collect(),
        blocks,
        degeneracy_tol: tol,
        manifolds,
    })
}

fn block_eigen(local: DMatrix<C64>) -> Result<Vec<(f64, Vec<C64>)>> {
    let n = local.nrows();
    if n == 1 {
        return Ok(vec![(local[(0, 0)].re, vec![C64::new(1.0, 0.0)])]);
    }
    let check = |e: f64| {
        if e.is_finite() {
            Ok(e)
        } else {
            Err(Error::Numerical("eigenvalue is not finite".into()))
        }
    };
    let mut out = Vec::with_capacity(n);
    if local.iter().all(|v| v.im == 0.0) {
        let real = local.map(|v| v.re);
        let eig = SymmetricEigen::new(real);
        for k in 0..n {
            let v = eig.eigenvectors.column(k).iter().map(|&x| C64::new(x, 0.0)).collect();
            out.push((check(eig.eigenvalues[k])?, v));
        }
    } else {
        let eig = SymmetricEigen::new(local);
        for k in 0..n {
            out.push((check(eig.eigenvalues[k])?, eig.eigenvectors.column(k).iter().copied().collect()));
        }
    }
    // ascending inside the block keeps the global stable sort deterministic
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(out)
}
