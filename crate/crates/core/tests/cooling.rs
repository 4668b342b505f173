use frustra::closed_forms::{ising_gas_rho_k, mg_dimer_state, mg_superposition};
use frustra::cooling::*;
use frustra::models::*;
use frustra::spin_core::*;
use frustra::Error;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn cfg() -> DenseConfig {
    DenseConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn cooling_is_idempotent(alpha in 0.1f64..1.0, beta in 0.1f64..1.0, lambda_idx in 0usize..=3) {
        let lambda = lambda_idx as f64 / 3.0;
        let h = build_ising_gas(3, lambda, 1.0).unwrap();
        let init = ising_gas_initial_state(3, alpha, beta).unwrap();
        let s = diagonalize(&h, None, &cfg()).unwrap();
        let once = cool_with_spectrum(&s, &init, Threshold::GroundManifold).unwrap();
        let twice = cool_with_spectrum(&s, &once.state, Threshold::GroundManifold).unwrap();
        prop_assert!((twice.z - 1.0).abs() < 1e-10);
        prop_assert!(once.state.fidelity(&twice.state) > 1.0 - 1e-10);
    }

    #[test]
    fn z_grows_with_threshold(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let local: Vec<[C64; 2]> = (0..6)
            .map(|_| [C64::new(rng.random_range(0.2..1.0), 0.0), C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))])
            .collect();
        let init = product_state(&local).unwrap();
        let s = diagonalize(&build_mg_chain(3, 1.0).unwrap(), None, &cfg()).unwrap();
        let mut last = 0.0;
        for n in 1..=s.manifolds().len() {
            let c = cool_with_spectrum(&s, &init, Threshold::Manifolds(n)).unwrap();
            let z_sum: f64 = (0..c.retained()).map(|i| s.overlap(i, &init).norm_sqr()).sum();
            prop_assert!((c.z - z_sum).abs() < 1e-10);
            prop_assert!(c.z + 1e-12 >= last);
            last = c.z;
        }
        prop_assert!((last - 1.0).abs() < 1e-10);
    }

    #[test]
    fn ising_gas_ground_is_dicke(seed in any::<u64>(), m in 2usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b): (f64, f64) = (rng.random_range(0.1..1.0), rng.random_range(0.1..1.0));
        for j in 0..m {
            let lambda = j as f64 / m as f64;
            let c = cool(
                &build_ising_gas(m, lambda, 1.0).unwrap(),
                &ising_gas_initial_state(m, a, b).unwrap(),
                Threshold::GroundManifold,
                &cfg(),
            ).unwrap();
            let zeros = ising_gas_zero_count(m, lambda).unwrap();
            let d = dicke_state(2 * m, 2 * m - zeros).unwrap();
            prop_assert!(c.state.fidelity(&d) > 1.0 - 1e-10);
        }
    }
}

#[test]
fn ising_gas_scan_matches_closed_form() {
    let spec = ModelSpec::ising_gas(4, 0.0, Sign::Frustrated);
    let cuts: Vec<_> = (1..8).map(|k| Bipartition::contiguous(8, 0, k).unwrap()).collect();
    let rows = cooled_entropy_scan(&spec, None, &[Threshold::GroundManifold], &cuts, &cfg()).unwrap();
    for (k, r) in (1..8).zip(&rows) {
        let exact = ising_gas_rho_k(4, 0.0, k).unwrap().entropy();
        assert!((r.entropy - exact).abs() < 1e-10, "k={k}");
        assert_eq!(r.k, k);
    }
}

#[test]
fn mg_dimer_manifold_is_preserved() {
    let spec = ModelSpec::mg(4);
    let s = spec.spectrum(&cfg()).unwrap();
    assert_eq!(s.ground_manifold().multiplicity, 2);
    let init = mg_superposition(4, C64::new(0.6, 0.0), C64::new(0.0, 0.8)).unwrap();
    let c = cool_with_spectrum(&s, &init, Threshold::GroundManifold).unwrap();
    assert!((c.z - 1.0).abs() < 1e-10);
    assert!(c.state.fidelity(&init) > 1.0 - 1e-10);
    // each dimer covering alone cuts an integer number of singlets
    for plus in [true, false] {
        let d = mg_dimer_state(4, plus).unwrap();
        for start in 0..8 {
            let cut = Bipartition::contiguous(8, start, 4).unwrap();
            let e = entanglement_entropy(&d, &cut).unwrap();
            assert!((e - e.round()).abs() < 1e-10 && e <= 2.0 + 1e-10, "start={start} e={e}");
        }
    }
}

#[test]
fn orthogonal_initial_state_is_an_error() {
    // all-|0⟩ has zero overlap with the singlet dimer manifold
    let init = StateVector::basis(8, 0);
    let err = cool(&build_mg_chain(4, 1.0).unwrap(), &init, Threshold::GroundManifold, &cfg()).unwrap_err();
    assert!(matches!(err, Error::OrthogonalInitialState { .. }));
}

#[test]
fn threshold_round_trip() {
    for t in [Threshold::GroundManifold, Threshold::Energy(-1.5), Threshold::Manifolds(3)] {
        assert_eq!(t.to_string().parse::<Threshold>().unwrap(), t);
    }
    assert!("energy=x".parse::<Threshold>().is_err());
    assert!("lowest".parse::<Threshold>().is_err());
}

#[test]
fn energy_threshold_keeps_everything_below() {
    let s = diagonalize(&build_heisenberg_gas(2, 1.0).unwrap(), None, &cfg()).unwrap();
    let init = ModelSpec::heisenberg_gas(2).default_initial_state().unwrap();
    let top = *s.eigenvalues().last().unwrap();
    let c = cool_with_spectrum(&s, &init, Threshold::Energy(top)).unwrap();
    assert!((c.z - 1.0).abs() < 1e-10);
    assert!(c.state.fidelity(&init) > 1.0 - 1e-10);
}

#[test]
fn optimizer_beats_fixed_start() {
    let spec = ModelSpec::single_bond(2, Sign::Frustrated);
    let s = spec.spectrum(&cfg()).unwrap();
    let base = vec![[C64::new(1.0, 0.0), C64::new(1.0, 0.0)]; 4];
    let cut = Bipartition::contiguous(4, 0, 2).unwrap();
    let fixed = {
        let c = cool_with_spectrum(&s, &product_state(&base).unwrap(), Threshold::GroundManifold).unwrap();
        entanglement_entropy(&c.state, &cut).unwrap()
    };
    let opt = maximize_cut_entropy(&s, &base, &[0, 1], Threshold::GroundManifold, &cut).unwrap();
    assert!(opt.entropy + 1e-12 >= fixed);
    assert_eq!(opt.angles.len(), 2);
}
