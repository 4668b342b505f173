use nalgebra::linalg::SymmetricEigen;
use nalgebra::DMatrix;

use super::{Bipartition, StateVector, C64};
use crate::{Error, Result};

/// Reduced density matrix on `cut.system_sites()`. Bit `j` of a row index is
/// the `j`-th listed system site.
pub fn partial_trace(state: &StateVector, cut: &Bipartition) -> Result<DMatrix<C64>> {
    if cut.num_sites() != state.num_sites() {
        return Err(Error::validation(format!(
            "cut is for {} sites, state has {}",
            cut.num_sites(),
            state.num_sites()
        )));
    }
    if !cut.is_proper() {
        return Err(Error::DegenerateCut {
            num_sites: state.num_sites(),
        });
    }
    state.require_normalized("state")?;
    let sys = cut.system_sites();
    let env = cut.complement();
    let env = env.system_sites();
    let (ds, de) = (1usize << sys.len(), 1usize << env.len());
    let mut psi = DMatrix::<C64>::zeros(ds, de);
    for (b, &amp) in state.amplitudes().iter().enumerate() {
        if amp.norm_sqr() == 0.0 {
            continue;
        }
        let s = gather(b, sys);
        let e = gather(b, env);
        psi[(s, e)] = amp;
    }
    Ok(&psi * psi.adjoint())
}

fn gather(b: usize, sites: &[usize]) -> usize {
    sites
        .iter()
        .enumerate()
        .fold(0, |acc, (j, &s)| acc | (((b >> s) & 1) << j))
}

/// `−Σ p log₂ p` over eigenvalues of a density matrix. Eigenvalues are
/// clipped to `[0, 1]` first; the result is clamped at zero.
pub fn von_neumann_entropy(rho: &DMatrix<C64>) -> Result<f64> {
    if rho.nrows() != rho.ncols() {
        return Err(Error::validation("density matrix must be square"));
    }
    let trace: C64 = rho.diagonal().iter().sum();
    if (trace.re - 1.0).abs() > 1e-8 || trace.im.abs() > 1e-8 {
        return Err(Error::validation(format!(
            "density matrix has trace {trace}, expected 1"
        )));
    }
    let eig = if rho.iter().all(|v| v.im == 0.0) {
        SymmetricEigen::new(rho.map(|v| v.re)).eigenvalues
    } else {
        SymmetricEigen::new(rho.clone()).eigenvalues
    };
    Ok(shannon_entropy_bits(eig.iter().copied()))
}

/// `−Σ p log₂ p` with `0 log 0 = 0`, probabilities clipped to `[0, 1]`.
pub fn shannon_entropy_bits(probs: impl IntoIterator<Item = f64>) -> f64 {
    let s: f64 = probs
        .into_iter()
        .map(|p| p.clamp(0.0, 1.0))
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum();
    s.max(0.0)
}

/// Entropy of entanglement of a pure state across `cut`, computed on
/// whichever side is smaller.
pub fn entanglement_entropy(state: &StateVector, cut: &Bipartition) -> Result<f64> {
    let small = if cut.len() * 2 > cut.num_sites() {
        cut.complement()
    } else {
        cut.clone()
    };
    von_neumann_entropy(&partial_trace(state, &small)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin_core::singlet_product;

    #[test]
    fn product_state_gives_pure_reduced_state() {
        // |01⟩: site 0 in |0⟩, site 1 in |1⟩ → index 2
        let s = StateVector::basis(2, 2);
        let rho = partial_trace(&s, &Bipartition::new(2, vec![0]).unwrap()).unwrap();
        assert_eq!(rho[(0, 0)].re, 1.0);
        assert_eq!(rho[(1, 1)].re, 0.0);
        assert_eq!(von_neumann_entropy(&rho).unwrap(), 0.0);
    }

    #[test]
    fn singlet_is_maximally_mixed() {
        let s = singlet_product(2, &[(0, 1)]).unwrap();
        let rho = partial_trace(&s, &Bipartition::new(2, vec![0]).unwrap()).unwrap();
        assert!((rho[(0, 0)].re - 0.5).abs() < 1e-15);
        assert!(rho[(0, 1)].norm() < 1e-15);
        assert!((von_neumann_entropy(&rho).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_cuts_rejected() {
        let s = StateVector::basis(2, 0);
        for sites in [vec![], vec![0, 1]] {
            assert!(matches!(
                partial_trace(&s, &Bipartition::new(2, sites).unwrap()),
                Err(Error::DegenerateCut { num_sites: 2 })
            ));
        }
    }

    #[test]
    fn entropy_of_known_spectrum() {
        let rho = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            C64::new(1.0 / 6.0, 0.0),
            C64::new(2.0 / 3.0, 0.0),
            C64::new(1.0 / 6.0, 0.0),
        ]));
        let want = -(2.0 * (1.0 / 6.0) * (1.0f64 / 6.0).log2() + (2.0 / 3.0) * (2.0f64 / 3.0).log2());
        assert!((von_neumann_entropy(&rho).unwrap() - want).abs() < 1e-12);
        assert!((want - 1.2516291673878228).abs() < 1e-12);
    }

    #[test]
    fn bad_trace_rejected() {
        let rho = DMatrix::<C64>::identity(2, 2);
        assert!(matches!(von_neumann_entropy(&rho), Err(Error::Validation(_))));
    }

    #[test]
    fn unnormalized_state_rejected() {
        let s = StateVector::from_real(1, &[1.0, 1.0]).unwrap();
        assert!(partial_trace(&StateVector::from_real(2, &[1.0, 1.0, 0.0, 0.0]).unwrap(), &Bipartition::new(2, vec![0]).unwrap()).is_err());
        assert!(!s.is_normalized());
    }
}
