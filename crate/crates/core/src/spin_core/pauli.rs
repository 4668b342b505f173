use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{StateVector, C64};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'I' | 'i' => Some(Pauli::I),
            'X' | 'x' => Some(Pauli::X),
            'Y' | 'y' => Some(Pauli::Y),
            'Z' | 'z' => Some(Pauli::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// One Pauli letter per site. In text form the leftmost letter is site 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn identity(num_sites: usize) -> Self {
        Self(vec![Pauli::I; num_sites])
    }

    pub fn from_letters(letters: Vec<Pauli>) -> Self {
        Self(letters)
    }

    /// Identity everywhere except the listed `(site, letter)` pairs.
    pub fn from_sparse(num_sites: usize, letters: &[(usize, Pauli)]) -> Result<Self> {
        let mut s = vec![Pauli::I; num_sites];
        for &(site, p) in letters {
            if site >= num_sites {
                return Err(Error::validation(format!(
                    "site {site} out of range for {num_sites} sites"
                )));
            }
            if s[site] != Pauli::I {
                return Err(Error::validation(format!("site {site} assigned twice")));
            }
            s[site] = p;
        }
        Ok(Self(s))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }

    /// Sites carrying a non-identity letter, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != Pauli::I).collect()
    }

    fn mask_of(&self, pred: impl Fn(Pauli) -> bool) -> usize {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &p)| pred(p))
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    /// Sites flipped by the string (X or Y).
    pub fn flip_mask(&self) -> usize {
        self.mask_of(|p| matches!(p, Pauli::X | Pauli::Y))
    }

    /// Sites contributing a `(−1)^bit` sign (Y or Z).
    pub fn sign_mask(&self) -> usize {
        self.mask_of(|p| matches!(p, Pauli::Y | Pauli::Z))
    }

    pub fn y_count(&self) -> usize {
        self.0.iter().filter(|&&p| p == Pauli::Y).count()
    }

    /// `P|b⟩ = phase · |b ⊕ flip_mask⟩`; returns `(b ⊕ flip_mask, phase)`.
    pub fn act(&self, b: usize) -> (usize, C64) {
        act_masks(b, self.flip_mask(), self.sign_mask(), self.y_count())
    }
}

pub(crate) fn act_masks(b: usize, flip: usize, sign: usize, ys: usize) -> (usize, C64) {
    // Y|0⟩ = i|1⟩, Y|1⟩ = −i|0⟩: phase i^{#Y} (−1)^{popcount(b & (Y|Z))}
    let base = match ys % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    };
    let phase = if (b & sign).count_ones() % 2 == 1 {
        -base
    } else {
        base
    };
    (b ^ flip, phase)
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| {
                Pauli::from_char(c)
                    .ok_or_else(|| Error::validation(format!("bad Pauli letter {c:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(PauliString)
    }
}

/// Weighted sum of Pauli strings on a fixed number of sites. Equal strings
/// are merged by adding coefficients; strings whose coefficient sums to
/// exactly zero are dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliOperator {
    num_sites: usize,
    terms: BTreeMap<PauliString, C64>,
}

impl PauliOperator {
    pub fn new(num_sites: usize) -> Self {
        Self {
            num_sites,
            terms: BTreeMap::new(),
        }
    }

    pub fn num_sites(&self) -> usize {
        self.num_sites
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PauliString, C64)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }

    pub fn coefficient(&self, string: &PauliString) -> C64 {
        self.terms.get(string).copied().unwrap_or_default()
    }

    pub fn add_term(&mut self, coeff: f64, string: PauliString) -> Result<()> {
        self.add_complex_term(C64::new(coeff, 0.0), string)
    }

    /// Complex coefficients are accepted here so that non-Hermitian input can
    /// be represented; [`diagonalize`](super::diagonalize) rejects it.
    pub fn add_complex_term(&mut self, coeff: C64, string: PauliString) -> Result<()> {
        if string.len() != self.num_sites {
            return Err(Error::validation(format!(
                "string {string} has {} sites, operator has {}",
                string.len(),
                self.num_sites
            )));
        }
        let zero = C64::new(0.0, 0.0);
        let merged = self.terms.get(&string).copied().unwrap_or(zero) + coeff;
        if merged == zero {
            self.terms.remove(&string);
        } else {
            self.terms.insert(string, merged);
        }
        Ok(())
    }

    pub fn add_sparse(&mut self, coeff: f64, letters: &[(usize, Pauli)]) -> Result<()> {
        let s = PauliString::from_sparse(self.num_sites, letters)?;
        self.add_term(coeff, s)
    }

    pub fn add_z(&mut self, i: usize, coeff: f64) -> Result<()> {
        self.add_sparse(coeff, &[(i, Pauli::Z)])
    }

    pub fn add_zz(&mut self, i: usize, j: usize, coeff: f64) -> Result<()> {
        self.add_sparse(coeff, &[(i, Pauli::Z), (j, Pauli::Z)])
    }

    /// `coeff · σ_i · σ_j = coeff (XX + YY + ZZ)`.
    pub fn add_heisenberg(&mut self, i: usize, j: usize, coeff: f64) -> Result<()> {
        for p in [Pauli::X, Pauli::Y, Pauli::Z] {
            self.add_sparse(coeff, &[(i, p), (j, p)])?;
        }
        Ok(())
    }

    /// True when every coefficient is real, which makes the operator
    /// Hermitian since each Pauli string is.
    pub fn is_hermitian(&self) -> bool {
        self.terms.values().all(|c| c.im == 0.0)
    }

    /// No term flips a spin, so the computational basis diagonalizes it.
    pub fn is_diagonal(&self) -> bool {
        self.terms.keys().all(|s| s.flip_mask() == 0)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        let mut out = Self::new(self.num_sites);
        for (s, c) in &self.terms {
            if factor != 0.0 {
                out.terms.insert(s.clone(), c * factor);
            }
        }
        out
    }

    /// Largest `|coefficient|`, used as an energy scale.
    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `H|ψ⟩`.
    pub fn apply(&self, state: &StateVector) -> Result<StateVector> {
        if state.num_sites() != self.num_sites {
            return Err(Error::validation(format!(
                "state has {} sites, operator has {}",
                state.num_sites(),
                self.num_sites
            )));
        }
        let mut out = StateVector::zeros(self.num_sites);
        let src = state.amplitudes();
        let dst = out.amplitudes_mut();
        for (s, &c) in &self.terms {
            let (flip, sign, ys) = (s.flip_mask(), s.sign_mask(), s.y_count());
            for (b, amp) in src.iter().enumerate() {
                if amp.norm_sqr() == 0.0 {
                    continue;
                }
                let (row, phase) = act_masks(b, flip, sign, ys);
                dst[row] += c * phase * amp;
            }
        }
        Ok(out)
    }

    /// `⟨ψ|H|ψ⟩`.
    pub fn expectation(&self, state: &StateVector) -> Result<C64> {
        Ok(state.inner(&self.apply(state)?))
    }

    /// Non-zero entries of column `b` as `(row, value)` pairs, rows ascending
    /// and merged.
    pub(crate) fn column(&self, b: usize, out: &mut Vec<(usize, C64)>) {
        out.clear();
        for (s, &c) in &self.terms {
            let (row, phase) = s.act(b);
            out.push((row, c * phase));
        }
        out.sort_by_key(|e| e.0);
        let mut merged: Vec<(usize, C64)> = Vec::with_capacity(out.len());
        for &(r, v) in out.iter() {
            match merged.last_mut() {
                Some(last) if last.0 == r => last.1 += v,
                _ => merged.push((r, v)),
            }
        }
        merged.retain(|e| e.1.norm() > 0.0);
        *out = merged;
    }

    /// Parses the line format `<coeff> <string>` with `#` comments. The
    /// site count is taken from the first string.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut op: Option<PauliOperator> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let perr = |msg: String| Error::Parse {
                line: lineno + 1,
                msg,
            };
            let mut fields = line.split_whitespace();
            let (coeff, string) = match (fields.next(), fields.next(), fields.next()) {
                (Some(c), Some(s), None) => (c, s),
                _ => return Err(perr("expected `<coeff> <string>`".into())),
            };
            let coeff: f64 = coeff
                .replace('\u{2212}', "-")
                .parse()
                .map_err(|e| perr(format!("bad coefficient {coeff:?}: {e}")))?;
            let string: PauliString = string.parse().map_err(|e: Error| perr(e.to_string()))?;
            let op = op.get_or_insert_with(|| PauliOperator::new(string.len()));
            op.add_term(coeff, string).map_err(|e| perr(e.to_string()))?;
        }
        op.ok_or_else(|| Error::Parse {
            line: 0,
            msg: "no terms".into(),
        })
    }

    /// Inverse of [`parse_text`](Self::parse_text). Only valid for
    /// real-coefficient operators.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (s, c) in &self.terms {
            out.push_str(&format!("{} {}\n", c.re, s));
        }
        out
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_text(s)
    }
}
