//! Hamiltonian builders for the six prototype models and their standard
//! initial product states.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::spin_core::{
    diagonalize, diagonalize_matrix, product_state, DenseConfig, PauliOperator,
    SpectralDecomposition, StateVector, C64,
};
use crate::{Error, Result};

const INTEGRALITY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    /// Long-range Ising gas `(J/2m)(S − 2mλ)²` on `2m` sites.
    IsingGas,
    /// All-to-all Heisenberg gas on `2m` sites.
    HeisenbergGas,
    /// `2m × 2m` plaquette lattice with HH/VV ground states (`m²` plaquettes).
    Rvb,
    /// `L × L` Shastry-Sutherland lattice, `L = m`.
    ShastrySutherland,
    /// Majumdar-Ghosh ring on `2m` sites.
    #[serde(rename = "mg")]
    MajumdarGhosh,
    /// Nearest-neighbour Ising ring on `2m` sites with one antiferromagnetic bond.
    SingleBond,
}

impl ModelKind {
    pub const ALL: [ModelKind; 6] = [
        ModelKind::IsingGas,
        ModelKind::HeisenbergGas,
        ModelKind::Rvb,
        ModelKind::ShastrySutherland,
        ModelKind::MajumdarGhosh,
        ModelKind::SingleBond,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ModelKind::IsingGas => "ising-gas",
            ModelKind::HeisenbergGas => "heisenberg-gas",
            ModelKind::Rvb => "rvb",
            ModelKind::ShastrySutherland => "shastry-sutherland",
            ModelKind::MajumdarGhosh => "mg",
            ModelKind::SingleBond => "single-bond",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ModelKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = ModelKind::ALL.iter().map(|k| k.name()).collect();
                Error::validation(format!("unknown model {s:?}, expected one of {}", names.join(", ")))
            })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    #[default]
    Frustrated,
    Unfrustrated,
}

/// Flat model description, serialized as
/// `{"kind", "m", "lambda", "j1", "j2", "j3", "flipped_bond", "sign"}` plus
/// `"density"` for the RVB model.
///
/// * `ising-gas`: `J = ±|j1|`, positive when frustrated.
/// * `single-bond`: coupling magnitude `j1`; the unfrustrated variant has no
///   flipped bond.
/// * `mg`: `j1 > 0`; `j2`, if given, must equal `j1/2`.
/// * `shastry-sutherland`: `m` is the side length `L`.
/// * `rvb`: `density` is the vertical fraction `d = s/m²`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub kind: ModelKind,
    pub m: usize,
    #[serde(default)]
    pub lambda: f64,
    #[serde(default = "one")]
    pub j1: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j3: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flipped_bond: Option<usize>,
    #[serde(default)]
    pub sign: Sign,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<f64>,
}

fn one() -> f64 {
    1.0
}

impl ModelSpec {
    pub fn new(kind: ModelKind, m: usize) -> Self {
        Self {
            kind,
            m,
            lambda: 0.0,
            j1: 1.0,
            j2: None,
            j3: None,
            flipped_bond: None,
            sign: Sign::Frustrated,
            density: None,
        }
    }

    pub fn ising_gas(m: usize, lambda: f64, sign: Sign) -> Self {
        Self {
            lambda,
            sign,
            ..Self::new(ModelKind::IsingGas, m)
        }
    }

    pub fn heisenberg_gas(m: usize) -> Self {
        Self::new(ModelKind::HeisenbergGas, m)
    }

    pub fn mg(m: usize) -> Self {
        Self::new(ModelKind::MajumdarGhosh, m)
    }

    pub fn single_bond(m: usize, sign: Sign) -> Self {
        Self {
            sign,
            ..Self::new(ModelKind::SingleBond, m)
        }
    }

    pub fn shastry_sutherland(l: usize, j1: f64, j2: f64) -> Self {
        Self {
            j1,
            j2: Some(j2),
            ..Self::new(ModelKind::ShastrySutherland, l)
        }
    }

    pub fn rvb(m: usize, density: f64) -> Self {
        Self {
            density: Some(density),
            ..Self::new(ModelKind::Rvb, m)
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.j1.is_finite() || self.j1 == 0.0 {
            return Err(Error::validation("j1 must be finite and nonzero"));
        }
        for (name, v) in [("j2", self.j2), ("j3", self.j3)] {
            if v.is_some_and(|v| !v.is_finite()) {
                return Err(Error::validation(format!("{name} must be finite")));
            }
        }
        match self.kind {
            ModelKind::IsingGas => {
                require_m(self.m, 1)?;
                ising_gas_zero_count(self.m, self.lambda).map(|_| ())
            }
            ModelKind::HeisenbergGas => {
                require_m(self.m, 1)?;
                require_positive("j1", self.j1)
            }
            ModelKind::MajumdarGhosh => {
                require_m(self.m, 2)?;
                require_positive("j1", self.j1)?;
                if let Some(j2) = self.j2 {
                    if (self.j1 - 2.0 * j2).abs() > 1e-12 * self.j1.abs() {
                        return Err(Error::validation(format!(
                            "Majumdar-Ghosh point needs j1 = 2 j2, got j1={} j2={j2}",
                            self.j1
                        )));
                    }
                }
                Ok(())
            }
            ModelKind::SingleBond => {
                require_m(self.m, 2)?;
                require_positive("j1", self.j1)?;
                match self.flipped_bond {
                    Some(b) if b >= 2 * self.m => Err(Error::validation(format!(
                        "flipped bond {b} is not one of the {} ring bonds",
                        2 * self.m
                    ))),
                    _ => Ok(()),
                }
            }
            ModelKind::ShastrySutherland => {
                check_ss_side(self.m)?;
                require_positive("j1", self.j1)?;
                require_positive("j2", self.j2.unwrap_or(0.0))
            }
            ModelKind::Rvb => {
                require_m(self.m, 1)?;
                rvb_vertical_count(self.m * self.m, self.density.unwrap_or(0.5)).map(|_| ())
            }
        }
    }

    /// Number of sites of [`ModelSpec::hamiltonian`].
    pub fn num_sites(&self) -> usize {
        match self.kind {
            ModelKind::ShastrySutherland => self.m * self.m,
            ModelKind::Rvb => 4 * self.m * self.m,
            _ => 2 * self.m,
        }
    }

    /// Number of two-level sites of [`ModelSpec::spectrum`] and
    /// [`ModelSpec::default_initial_state`]. For the RVB model these are
    /// plaquettes in the effective HH/⊥ basis.
    pub fn state_sites(&self) -> usize {
        match self.kind {
            ModelKind::Rvb => self.m * self.m,
            _ => self.num_sites(),
        }
    }

    /// Signed coupling used by the builders.
    pub fn coupling(&self) -> f64 {
        match (self.kind, self.sign) {
            (ModelKind::IsingGas, Sign::Frustrated) => self.j1.abs(),
            (ModelKind::IsingGas, Sign::Unfrustrated) => -self.j1.abs(),
            _ => self.j1,
        }
    }

    /// Flipped bond of the single-bond ring, `None` for the unfrustrated
    /// control.
    pub fn effective_flipped_bond(&self) -> Option<usize> {
        match self.sign {
            Sign::Frustrated => Some(self.flipped_bond.unwrap_or(2 * self.m - 1)),
            Sign::Unfrustrated => None,
        }
    }

    /// Vertical plaquette count `s = d m²` of the RVB model.
    pub fn vertical_count(&self) -> Result<usize> {
        rvb_vertical_count(self.m * self.m, self.density.unwrap_or(0.5))
    }

    /// Microscopic Hamiltonian. For the RVB model this is the J1-J2-J3
    /// lattice, which is too large for dense work at any useful size.
    pub fn hamiltonian(&self) -> Result<PauliOperator> {
        self.validate()?;
        match self.kind {
            ModelKind::IsingGas => build_ising_gas(self.m, self.lambda, self.coupling()),
            ModelKind::HeisenbergGas => build_heisenberg_gas(self.m, self.j1),
            ModelKind::MajumdarGhosh => build_mg_chain(self.m, self.j1),
            ModelKind::SingleBond => {
                build_single_bond_ising(self.m, self.j1, self.effective_flipped_bond())
            }
            ModelKind::ShastrySutherland => {
                build_shastry_sutherland(self.m, self.j1, self.j2.unwrap_or(0.0))
            }
            ModelKind::Rvb => build_j1j2j3(
                self.m,
                self.j1,
                self.j2.unwrap_or(0.0),
                self.j3.unwrap_or(0.0),
            ),
        }
    }

    /// Spectrum used for cooling. The RVB model uses the effective
    /// plaquette Hamiltonian `I − P_G`.
    pub fn spectrum(&self, cfg: &DenseConfig) -> Result<SpectralDecomposition> {
        self.validate()?;
        match self.kind {
            ModelKind::Rvb => {
                let n = self.m * self.m;
                cfg.check("rvb effective Hamiltonian", n)?;
                let h = rvb_effective_hamiltonian(n, self.vertical_count()?)?;
                diagonalize_matrix(&h, None, cfg)
            }
            _ => diagonalize(&self.hamiltonian()?, None, cfg),
        }
    }

    pub fn default_initial_state(&self) -> Result<StateVector> {
        self.validate()?;
        let h = std::f64::consts::FRAC_1_SQRT_2;
        match self.kind {
            ModelKind::IsingGas => ising_gas_initial_state(self.m, h, h),
            ModelKind::SingleBond => ising_gas_initial_state(self.m, h, h),
            ModelKind::HeisenbergGas => heisenberg_gas_initial_state(
                self.m,
                [C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
                [C64::new(h, 0.0), C64::new(h, 0.0)],
            ),
            ModelKind::MajumdarGhosh => {
                let plus = [C64::new(h, 0.0), C64::new(h, 0.0)];
                mg_initial_state(self.m, plus, plus)
            }
            ModelKind::ShastrySutherland => {
                let mut sites = vec![[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]; self.m * self.m];
                for (_, b) in shastry_sutherland_dimers(self.m)? {
                    sites[b] = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
                }
                product_state(&sites)
            }
            ModelKind::Rvb => rvb_plaquette_product(&vec![(h, h); self.m * self.m]),
        }
    }
}

fn require_m(m: usize, min: usize) -> Result<()> {
    if m < min {
        Err(Error::validation(format!("m must be at least {min}, got {m}")))
    } else {
        Ok(())
    }
}

fn require_positive(name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::validation(format!("{name} must be positive, got {v}")))
    }
}

fn near_integer(x: f64) -> Option<usize> {
    let r = x.round();
    ((x - r).abs() <= INTEGRALITY_TOL && r >= 0.0).then_some(r as usize)
}

/// Number of `|0⟩` sites, `m(1+λ)`, in the Ising-gas ground sector.
pub fn ising_gas_zero_count(m: usize, lambda: f64) -> Result<usize> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::validation(format!("lambda must lie in [0, 1], got {lambda}")));
    }
    match near_integer(2.0 * m as f64 * lambda) {
        Some(t) if (t + 2 * m).is_multiple_of(2) => Ok(m + t / 2),
        Some(_) => Err(Error::validation(format!(
            "m(1+lambda) must be an integer; lambda={lambda} gives a half-filled sector at m={m}"
        ))),
        None => Err(Error::validation(format!(
            "2m·lambda must be an integer, got {}",
            2.0 * m as f64 * lambda
        ))),
    }
}

/// `s = d·n`, which must be an integer in `0..=n`.
pub fn rvb_vertical_count(num_plaquettes: usize, density: f64) -> Result<usize> {
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::validation(format!("density must lie in [0, 1], got {density}")));
    }
    near_integer(density * num_plaquettes as f64).ok_or_else(|| {
        Error::validation(format!(
            "density {density} does not give an integer vertical count on {num_plaquettes} plaquettes"
        ))
    })
}

/// `(J/2m)(2 Σ_{i<j} Z_i Z_j − 4mλ Σ_i Z_i)` on `2m` sites.
pub fn build_ising_gas(m: usize, lambda: f64, j: f64) -> Result<PauliOperator> {
    require_m(m, 1)?;
    let n = 2 * m;
    let scale = j / n as f64;
    let mut h = PauliOperator::new(n);
    for i in 0..n {
        for k in i + 1..n {
            h.add_zz(i, k, 2.0 * scale)?;
        }
    }
    if lambda != 0.0 {
        for i in 0..n {
            h.add_z(i, -4.0 * m as f64 * lambda * scale)?;
        }
    }
    Ok(h)
}

/// `(J/2m) Σ_{i<j} σ_i·σ_j` on `2m` sites.
pub fn build_heisenberg_gas(m: usize, j: f64) -> Result<PauliOperator> {
    require_m(m, 1)?;
    let n = 2 * m;
    let mut h = PauliOperator::new(n);
    for a in 0..n {
        for b in a + 1..n {
            h.add_heisenberg(a, b, j / n as f64)?;
        }
    }
    Ok(h)
}

/// Periodic `J1–J2` Heisenberg ring at `J2 = J1/2`.
pub fn build_mg_chain(m: usize, j1: f64) -> Result<PauliOperator> {
    require_m(m, 2)?;
    let n = 2 * m;
    let mut h = PauliOperator::new(n);
    for i in 0..n {
        h.add_heisenberg(i, (i + 1) % n, j1)?;
        h.add_heisenberg(i, (i + 2) % n, j1 / 2.0)?;
    }
    Ok(h)
}

/// Ising ring on `2m` sites, bond `i` joining `i` and `i+1 mod 2m`, all
/// couplings `−J` except `flipped`, which is `+J`.
pub fn build_single_bond_ising(m: usize, j: f64, flipped: Option<usize>) -> Result<PauliOperator> {
    require_m(m, 2)?;
    let n = 2 * m;
    if let Some(f) = flipped.filter(|&f| f >= n) {
        return Err(Error::validation(format!("flipped bond {f} out of range 0..{n}")));
    }
    let mut h = PauliOperator::new(n);
    for i in 0..n {
        let c = if Some(i) == flipped { j } else { -j };
        h.add_zz(i, (i + 1) % n, c)?;
    }
    Ok(h)
}

fn check_ss_side(l: usize) -> Result<()> {
    if l < 4 || l % 2 == 1 {
        Err(Error::validation(format!(
            "Shastry-Sutherland side must be even and at least 4, got {l}"
        )))
    } else {
        Ok(())
    }
}

/// The `J2` diagonals of an `L × L` periodic lattice, site `(i, j)` at
/// index `i·L + j`: `(2a, 2b)–(2a+1, 2b+1)` and `(2a, 2b+1)–(2a−1, 2b+2)`.
pub fn shastry_sutherland_dimers(l: usize) -> Result<Vec<(usize, usize)>> {
    check_ss_side(l)?;
    let site = |i: usize, j: usize| (i % l) * l + (j % l);
    let mut out = Vec::with_capacity(l * l / 2);
    for a in 0..l / 2 {
        for b in 0..l / 2 {
            out.push((site(2 * a, 2 * b), site(2 * a + 1, 2 * b + 1)));
            out.push((site(2 * a, 2 * b + 1), site(2 * a + l - 1, 2 * b + 2)));
        }
    }
    Ok(out)
}

/// Nearest-neighbour Heisenberg `J1` on an `L × L` torus plus `J2` on the
/// Shastry-Sutherland diagonals.
pub fn build_shastry_sutherland(l: usize, j1: f64, j2: f64) -> Result<PauliOperator> {
    check_ss_side(l)?;
    let mut h = PauliOperator::new(l * l);
    for i in 0..l {
        for j in 0..l {
            let s = i * l + j;
            h.add_heisenberg(s, ((i + 1) % l) * l + j, j1)?;
            h.add_heisenberg(s, i * l + (j + 1) % l, j1)?;
        }
    }
    for (a, b) in shastry_sutherland_dimers(l)? {
        h.add_heisenberg(a, b, j2)?;
    }
    Ok(h)
}

/// J1-J2-J3 Heisenberg model on a `2m × 2m` torus tiled by `m²` plaquettes
/// (the 2×2 blocks with even corner). Each unordered site pair is coupled
/// at most once, classified by its minimum-image displacement `(dx, dy)`:
///
/// * `|dx| + |dy| = 1` or `|dx| = |dy| = 1`: `J1` inside a plaquette, `J2`
///   between plaquettes;
/// * `(2, 0)` and `(0, 2)`: `J3`;
/// * knight moves `(2, 1)` within a horizontal ladder (the same pair of
///   rows) and `(1, 2)` within a vertical ladder: `J3`.
pub fn build_j1j2j3(m: usize, j1: f64, j2: f64, j3: f64) -> Result<PauliOperator> {
    require_m(m, 2)?;
    let l = 2 * m;
    let n = l * l;
    let mut h = PauliOperator::new(n);
    let image = |a: usize, b: usize| {
        let d = (b + l - a) % l;
        d.min(l - d)
    };
    for s in 0..n {
        let (r1, c1) = (s / l, s % l);
        for t in s + 1..n {
            let (r2, c2) = (t / l, t % l);
            let (dr, dc) = (image(r1, r2), image(c1, c2));
            let same_plaquette = r1 / 2 == r2 / 2 && c1 / 2 == c2 / 2;
            let coupling = match (dr, dc) {
                (0, 1) | (1, 0) | (1, 1) if same_plaquette => j1,
                (0, 1) | (1, 0) | (1, 1) => j2,
                (0, 2) | (2, 0) => j3,
                (1, 2) if r1 / 2 == r2 / 2 => j3,
                (2, 1) if c1 / 2 == c2 / 2 => j3,
                _ => 0.0,
            };
            if coupling != 0.0 {
                h.add_heisenberg(s, t, coupling)?;
            }
        }
    }
    Ok(h)
}

/// `Π (α|0⟩ + β|1⟩)` on `2m` sites; requires `αβ ≠ 0`.
pub fn ising_gas_initial_state(m: usize, alpha: f64, beta: f64) -> Result<StateVector> {
    if alpha * beta == 0.0 || !(alpha * beta).is_finite() {
        return Err(Error::validation(format!(
            "initial amplitudes need alpha·beta ≠ 0, got alpha={alpha} beta={beta}"
        )));
    }
    product_state(&vec![[C64::new(alpha, 0.0), C64::new(beta, 0.0)]; 2 * m])
}

/// First `m` (black) sites in `ψ_b`, last `m` (white) sites in `ψ_w`.
pub fn heisenberg_gas_initial_state(m: usize, psi_b: [C64; 2], psi_w: [C64; 2]) -> Result<StateVector> {
    let mut sites = vec![psi_b; m];
    sites.extend(std::iter::repeat_n(psi_w, m));
    product_state(&sites)
}

/// `|0 1 0 1 … 0 1 φ₁ φ₂⟩` on `2m` sites.
pub fn mg_initial_state(m: usize, phi1: [C64; 2], phi2: [C64; 2]) -> Result<StateVector> {
    require_m(m, 2)?;
    let zero = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
    let one = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
    let mut sites = Vec::with_capacity(2 * m);
    for _ in 0..m - 1 {
        sites.push(zero);
        sites.push(one);
    }
    sites.push(phi1);
    sites.push(phi2);
    product_state(&sites)
}

/// Amplitudes of `|VV⟩` in the orthonormal plaquette basis `(|HH⟩, |⊥⟩)`.
/// Two singlet coverings of a square overlap by one half.
pub const VV_IN_EFFECTIVE_BASIS: [f64; 2] = [0.5, 0.866_025_403_784_438_6];

/// `Π_p (α_p|HH⟩ + β_p|VV⟩)` in the effective basis, one qubit per plaquette.
pub fn rvb_plaquette_product(alpha_beta: &[(f64, f64)]) -> Result<StateVector> {
    let [vh, vp] = VV_IN_EFFECTIVE_BASIS;
    let sites: Vec<[C64; 2]> = alpha_beta
        .iter()
        .map(|&(a, b)| [C64::new(a + b * vh, 0.0), C64::new(b * vp, 0.0)])
        .collect();
    product_state(&sites)
}

/// `I − P_G` on `n` effective plaquette qubits, where `P_G` projects onto
/// the span of all HH/VV configurations with exactly `s` VV plaquettes.
pub fn rvb_effective_hamiltonian(n: usize, s: usize) -> Result<DMatrix<C64>> {
    if s > n {
        return Err(Error::validation(format!("{s} vertical plaquettes exceed {n}")));
    }
    let dim = 1usize << n;
    let [vh, vp] = VV_IN_EFFECTIVE_BASIS;
    let configs: Vec<usize> = (0..dim).filter(|c| c.count_ones() as usize == s).collect();
    let mut span = DMatrix::<f64>::zeros(dim, configs.len());
    for (col, &vv) in configs.iter().enumerate() {
        for b in 0..dim {
            // a plaquette in ⊥ must be one of the VV plaquettes
            if b & !vv != 0 {
                continue;
            }
            let perp = (b & vv).count_ones() as i32;
            span[(b, col)] = vh.powi(s as i32 - perp) * vp.powi(perp);
        }
    }
    let q = span.qr().q();
    let p = &q * q.transpose();
    Ok(DMatrix::from_fn(dim, dim, |i, j| {
        let id = if i == j { 1.0 } else { 0.0 };
        C64::new(id - p[(i, j)], 0.0)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_core::{build_dense, singlet_product};

    fn ground_dim(h: &PauliOperator) -> usize {
        diagonalize(h, None, &DenseConfig::default())
            .unwrap()
            .ground_manifold()
            .multiplicity
    }

    #[test]
    fn ising_gas_m1_is_single_zz() {
        let h = build_ising_gas(1, 0.0, 1.0).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h.coefficient(&"ZZ".parse().unwrap()).re, 1.0);
    }

    #[test]
    fn ising_gas_ground_sectors() {
        let s = diagonalize(&build_ising_gas(2, 0.0, 1.0).unwrap(), None, &DenseConfig::default()).unwrap();
        let g = s.ground_manifold();
        assert_eq!(g.multiplicity, 6);
        for i in g.range() {
            let v = s.eigenvector(i);
            for (b, a) in v.amplitudes().iter().enumerate() {
                if a.norm() > 1e-12 {
                    assert_eq!(b.count_ones(), 2);
                }
            }
        }
        let s = diagonalize(&build_ising_gas(2, 0.5, 1.0).unwrap(), None, &DenseConfig::default()).unwrap();
        let g = s.ground_manifold();
        assert_eq!(g.multiplicity, 4);
        let v = s.eigenvector(0);
        let b = v.amplitudes().iter().position(|a| a.norm() > 0.5).unwrap();
        assert_eq!(4 - b.count_ones(), 3, "three sites in |0⟩");
    }

    #[test]
    fn ising_gas_ground_energy_matches_brute_force() {
        let h = build_ising_gas(2, 0.0, 1.0).unwrap();
        let dense = build_dense(&h, &DenseConfig::default()).unwrap();
        let brute = (0..16usize)
            .map(|b| {
                let s: f64 = (0..4).map(|i| if (b >> i) & 1 == 0 { 1.0 } else { -1.0 }).sum();
                // (J/2m) S² with the constant 2m·(J/2m) removed
                (s * s - 4.0) / 4.0
            })
            .fold(f64::INFINITY, f64::min);
        let e0 = (0..16).map(|i| dense[(i, i)].re).fold(f64::INFINITY, f64::min);
        assert!((e0 - brute).abs() < 1e-12);
    }

    #[test]
    fn ferromagnetic_ising_gas_has_two_ground_states() {
        let spec = ModelSpec::ising_gas(2, 0.0, Sign::Unfrustrated);
        assert_eq!(ground_dim(&spec.hamiltonian().unwrap()), 2);
    }

    #[test]
    fn heisenberg_gas_ground_dims() {
        assert_eq!(ground_dim(&build_heisenberg_gas(1, 1.0).unwrap()), 1);
        assert_eq!(ground_dim(&build_heisenberg_gas(2, 1.0).unwrap()), 2);
        assert_eq!(ground_dim(&build_heisenberg_gas(3, 1.0).unwrap()), 5);
    }

    #[test]
    fn mg_ground_space() {
        assert_eq!(ground_dim(&build_mg_chain(3, 1.0).unwrap()), 2);
        let h = build_mg_chain(4, 1.0).unwrap();
        let s = diagonalize(&h, None, &DenseConfig::default()).unwrap();
        // Pauli-matrix units: each dimer singlet scores −3 J1
        assert!((s.ground_energy() + 3.0 * 4.0).abs() < 1e-10);
        let plus: Vec<_> = (1..=4).map(|i| (2 * i - 1, (2 * i) % 8)).collect();
        let g = singlet_product(8, &plus).unwrap();
        assert!((h.expectation(&g).unwrap().re - s.ground_energy()).abs() < 1e-10);
    }

    #[test]
    fn single_bond_ground_space() {
        for m in [2, 3] {
            let h = build_single_bond_ising(m, 1.0, Some(2 * m - 1)).unwrap();
            let s = diagonalize(&h, None, &DenseConfig::default()).unwrap();
            assert_eq!(s.ground_manifold().multiplicity, 4 * m);
            assert!((s.ground_energy() + (2 * m - 2) as f64).abs() < 1e-12);
        }
        let fm = build_single_bond_ising(2, 1.0, None).unwrap();
        assert_eq!(ground_dim(&fm), 2);
    }

    #[test]
    fn shastry_sutherland_dimer_product_is_eigenstate() {
        let (j1, j2) = (0.3, 1.0);
        let h = build_shastry_sutherland(4, j1, j2).unwrap();
        let dimers = shastry_sutherland_dimers(4).unwrap();
        assert_eq!(dimers.len(), 8);
        let psi = singlet_product(16, &dimers).unwrap();
        let hpsi = h.apply(&psi).unwrap();
        let e = psi.inner(&hpsi).re;
        assert!((e + 3.0 * j2 * 8.0).abs() < 1e-10);
        let residual = hpsi
            .amplitudes()
            .iter()
            .zip(psi.amplitudes())
            .map(|(a, b)| (a - b * e).norm())
            .fold(0.0, f64::max);
        assert!(residual < 1e-10);
    }

    #[test]
    fn shastry_sutherland_rejects_small_or_odd() {
        assert!(build_shastry_sutherland(2, 1.0, 1.0).is_err());
        assert!(build_shastry_sutherland(5, 1.0, 1.0).is_err());
    }

    #[test]
    fn j1j2j3_plaquettes_are_complete_graphs() {
        let h = build_j1j2j3(2, 1.0, 0.0, 0.0).unwrap();
        // 4 plaquettes × 6 pairs × 3 Pauli letters
        assert_eq!(h.len(), 4 * 6 * 3);
    }

    #[test]
    fn initial_states() {
        let u = ModelSpec::single_bond(2, Sign::Frustrated).default_initial_state().unwrap();
        assert!(u.amplitudes().iter().all(|a| (a.re - 0.25).abs() < 1e-15));
        assert!(ising_gas_initial_state(2, 1.0, 0.0).is_err());
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let plus = [C64::new(h, 0.0), C64::new(h, 0.0)];
        let mg = mg_initial_state(3, plus, plus).unwrap();
        // sites 0..4 = 0 1 0 1 → bits 1 and 3 set
        for (b, a) in mg.amplitudes().iter().enumerate() {
            let want = if b & 0b1111 == 0b1010 { 0.5 } else { 0.0 };
            assert!((a.re - want).abs() < 1e-15);
        }
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = ModelSpec::ising_gas(3, 1.0 / 3.0, Sign::Frustrated);
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.contains("\"kind\":\"ising-gas\""));
        let back: ModelSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(back, spec);
        let mg: ModelSpec = serde_json::from_str(r#"{"kind":"mg","m":4}"#).unwrap();
        assert_eq!(mg.kind, ModelKind::MajumdarGhosh);
        assert_eq!(mg.j1, 1.0);
    }

    #[test]
    fn lambda_grid_validation() {
        assert!(ModelSpec::ising_gas(2, 0.3, Sign::Frustrated).validate().is_err());
        assert!(ModelSpec::ising_gas(3, 1.0 / 6.0, Sign::Frustrated).validate().is_err());
        assert!(ModelSpec::ising_gas(3, 1.0 / 3.0, Sign::Frustrated).validate().is_ok());
        assert_eq!(ising_gas_zero_count(3, 2.0 / 3.0).unwrap(), 5);
        assert!(ModelSpec { j2: Some(0.4), ..ModelSpec::mg(3) }.validate().is_err());
    }

    #[test]
    fn rvb_effective_ground_dim() {
        let h = rvb_effective_hamiltonian(4, 2).unwrap();
        let s = diagonalize_matrix(&h, None, &DenseConfig::default()).unwrap();
        assert_eq!(s.ground_manifold().multiplicity, 6);
        assert!(s.ground_energy().abs() < 1e-12);
    }
}
