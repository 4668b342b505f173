use frustra::models::{build_heisenberg_gas, build_ising_gas, build_mg_chain};
use frustra::spin_core::*;
use proptest::prelude::*;

fn random_state(n: usize, re: &[f64], im: &[f64]) -> StateVector {
    let amps = (0..1 << n).map(|i| C64::new(re[i], im[i])).collect();
    StateVector::new(n, amps).unwrap().normalized().unwrap()
}

fn state_strategy() -> impl Strategy<Value = StateVector> {
    (2usize..=6).prop_flat_map(|n| {
        let len = 1 << n;
        (
            prop::collection::vec(-1.0f64..1.0, len),
            prop::collection::vec(-1.0f64..1.0, len),
        )
            .prop_filter("nonzero", |(re, _)| re.iter().any(|x| x.abs() > 1e-3))
            .prop_map(move |(re, im)| random_state(n, &re, &im))
    })
}

fn operator_strategy() -> impl Strategy<Value = PauliOperator> {
    (1usize..=4).prop_flat_map(|n| {
        prop::collection::vec((-2.0f64..2.0, prop::collection::vec(0usize..4, n)), 1..8).prop_map(
            move |terms| {
                let mut op = PauliOperator::new(n);
                for (c, letters) in terms {
                    let s = PauliString::from_letters(
                        letters.iter().map(|&l| [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][l]).collect(),
                    );
                    op.add_term(c, s).unwrap();
                }
                op
            },
        )
    })
}

proptest! {
    #[test]
    fn schmidt_symmetry(state in state_strategy(), mask in 1usize..63) {
        let n = state.num_sites();
        let sites: Vec<usize> = (0..n).filter(|s| (mask >> s) & 1 == 1).collect();
        let cut = Bipartition::new(n, sites).unwrap();
        prop_assume!(cut.is_proper());
        let a = von_neumann_entropy(&partial_trace(&state, &cut).unwrap()).unwrap();
        let b = von_neumann_entropy(&partial_trace(&state, &cut.complement()).unwrap()).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn relabeling_invariance(state in state_strategy(), seed in any::<u64>()) {
        let n = state.num_sites();
        let k = 1 + (seed as usize % (n - 1));
        let sites: Vec<usize> = (0..k).map(|i| (i * 7 + seed as usize) % n).collect::<std::collections::BTreeSet<_>>().into_iter().collect();
        let mut reversed = sites.clone();
        reversed.reverse();
        let a = entanglement_entropy(&state, &Bipartition::new(n, sites).unwrap());
        let b = entanglement_entropy(&state, &Bipartition::new(n, reversed).unwrap());
        prop_assert!((a.unwrap() - b.unwrap()).abs() < 1e-10);
    }

    #[test]
    fn product_states_are_unentangled(
        local in prop::collection::vec(((-1.0f64..1.0), (-1.0f64..1.0), (-1.0f64..1.0)), 2..7),
        mask in 1usize..63,
    ) {
        let sites: Vec<[C64; 2]> = local
            .iter()
            .map(|&(a, b, c)| [C64::new(a + 1.5, 0.0), C64::new(b, c)])
            .collect();
        let n = sites.len();
        let state = product_state(&sites).unwrap();
        let cut = Bipartition::new(n, (0..n).filter(|s| (mask >> s) & 1 == 1).collect()).unwrap();
        prop_assume!(cut.is_proper());
        let rho = partial_trace(&state, &cut).unwrap();
        let tr: C64 = rho.diagonal().iter().sum();
        prop_assert!((tr.re - 1.0).abs() < 1e-12);
        prop_assert!(von_neumann_entropy(&rho).unwrap() < 1e-10);
    }

    #[test]
    fn eigenpairs_reproduce_operator(op in operator_strategy()) {
        let s = diagonalize(&op, None, &DenseConfig::default()).unwrap();
        let dense = build_dense(&op, &DenseConfig::default()).unwrap();
        let scale = dense.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1e-300);
        let err = (&dense - s.reconstruct()).iter().map(|v| v.norm()).fold(0.0, f64::max);
        prop_assert!(err <= 1e-9 * scale);
        prop_assert!(s.eigenvalues().windows(2).all(|w| w[0] <= w[1]));
        for i in 0..s.len() {
            let v = s.eigenvector(i);
            prop_assert!((op.expectation(&v).unwrap().re - s.eigenvalues()[i]).abs() < 1e-9);
            for j in 0..i {
                prop_assert!(v.inner(&s.eigenvector(j)).norm() < 1e-10);
            }
            prop_assert!((v.norm_sqr() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn builders_are_hermitian(state in state_strategy()) {
        let n = state.num_sites();
        prop_assume!(n % 2 == 0);
        let m = n / 2;
        let mut ops = vec![build_ising_gas(m, 0.0, 1.0).unwrap(), build_heisenberg_gas(m, 1.0).unwrap()];
        if m >= 2 {
            ops.push(build_mg_chain(m, 1.0).unwrap());
        }
        for op in ops {
            prop_assert!(op.is_hermitian());
            prop_assert!(op.expectation(&state).unwrap().im.abs() < 1e-10);
        }
    }
}

#[test]
fn dicke_half_block_spectrum() {
    let d = dicke_state(4, 2).unwrap();
    let rho = partial_trace(&d, &Bipartition::new(4, vec![0, 1]).unwrap()).unwrap();
    let mut ev: Vec<f64> = nalgebra::linalg::SymmetricEigen::new(rho.map(|v| v.re))
        .eigenvalues
        .iter()
        .copied()
        .filter(|e| e.abs() > 1e-12)
        .collect();
    ev.sort_by(f64::total_cmp);
    assert_eq!(ev.len(), 3);
    for (got, want) in ev.iter().zip([1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0]) {
        assert!((got - want).abs() < 1e-12);
    }
}

#[test]
fn degenerate_manifolds() {
    let cfg = DenseConfig::default();
    let fm = diagonalize(&build_ising_gas(2, 0.0, -1.0).unwrap(), None, &cfg).unwrap();
    let g = fm.ground_manifold();
    assert_eq!(g.multiplicity, 2);
    let support: Vec<usize> = g
        .range()
        .flat_map(|i| {
            let v = fm.eigenvector(i);
            (0..16).filter(move |&b| v.amplitudes()[b].norm() > 1e-12).collect::<Vec<_>>()
        })
        .collect();
    assert_eq!(support, vec![0, 15]);
    let af = diagonalize(&build_ising_gas(2, 0.0, 1.0).unwrap(), None, &cfg).unwrap();
    assert_eq!(af.ground_manifold().multiplicity, 6);
}

#[test]
fn dense_cap_from_env_default() {
    // the variable is not set in the test environment
    if std::env::var(DENSE_CAP_ENV).is_err() {
        assert_eq!(DenseConfig::from_env().unwrap().max_sites, DEFAULT_DENSE_CAP);
    }
}
