use frustra::frustration::*;
use frustra::models::*;
use frustra::spin_core::*;
use proptest::prelude::*;

fn ring(n: usize, couplings: &[f64]) -> PauliOperator {
    let mut op = PauliOperator::new(n);
    for (i, &j) in couplings.iter().enumerate() {
        op.add_zz(i, (i + 1) % n, j).unwrap();
    }
    op
}

proptest! {
    #[test]
    fn frustration_is_nonnegative_and_scale_free(
        couplings in prop::collection::vec(prop_oneof![-2.0f64..-0.1, 0.1f64..2.0], 3..9),
        scale in 0.1f64..10.0,
    ) {
        let n = couplings.len();
        let op = ring(n, &couplings);
        let r = frustration_degree(&op, FrustrationMode::Ising).unwrap();
        prop_assert!(r.value >= 0.0);
        let scaled: Vec<f64> = couplings.iter().map(|c| c * scale).collect();
        let s = frustration_degree(&ring(n, &scaled), FrustrationMode::Ising).unwrap();
        prop_assert!((r.value - s.value).abs() < 1e-9);
        prop_assert_eq!(r.num_ground_configs, s.num_ground_configs);
        prop_assert_eq!(r.value > 1e-12, frustrated_ring(&couplings));
    }
}

// a ring is frustrated iff an odd number of its bonds are antiferromagnetic
fn frustrated_ring(couplings: &[f64]) -> bool {
    couplings.iter().filter(|&&c| c > 0.0).count() % 2 == 1
}

#[test]
fn ferromagnet_is_unfrustrated() {
    for n in 3..8 {
        let r = frustration_degree(&ring(n, &vec![-1.0; n]), FrustrationMode::Ising).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.num_ground_configs, 2);
    }
}

#[test]
fn ground_configs_attain_ground_energy() {
    let h = build_single_bond_ising(3, 1.0, None).unwrap();
    let r = frustration_degree(&h, FrustrationMode::Ising).unwrap();
    for &c in &r.ground_configs {
        let e = h.expectation(&StateVector::basis(6, c)).unwrap().re;
        assert!((e - r.ground_energy).abs() < 1e-12);
    }
    assert_eq!(r.per_config_ratios.len(), r.ground_configs.len());
}

#[test]
fn closed_forms_agree_with_enumeration() {
    let specs = [
        ModelSpec::heisenberg_gas(2),
        ModelSpec::heisenberg_gas(4),
        ModelSpec::single_bond(3, Sign::Frustrated),
        ModelSpec::single_bond(3, Sign::Unfrustrated),
        ModelSpec::mg(3),
        ModelSpec::ising_gas(3, 0.0, Sign::Frustrated),
        ModelSpec::ising_gas(3, 0.0, Sign::Unfrustrated),
    ];
    for spec in specs {
        let r = frustration_degree_model(&spec).unwrap();
        let cf = closed_form_frustration(&spec).unwrap();
        assert!((r.value - cf).abs() < 1e-12, "{:?}: {} vs {}", spec.kind, r.value, cf);
    }
    let hg = frustration_degree_model(&ModelSpec::heisenberg_gas(2)).unwrap();
    assert!((hg.value - 0.5).abs() < 1e-12);
}

#[test]
fn report_json_shape() {
    let r = frustration_degree_model(&ModelSpec::heisenberg_gas(4)).unwrap();
    let v: serde_json::Value = serde_json::to_value(&r).unwrap();
    assert!((v["f"].as_f64().unwrap() - 0.75).abs() < 1e-12);
    assert!((v["closed_form"].as_f64().unwrap() - 0.75).abs() < 1e-12);
    assert!(v.get("ground_energy").is_none());
}
