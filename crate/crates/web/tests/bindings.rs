use frustra_web::{fig1_points, frustration_json, ising_gas_curve};

#[test]
fn fig1_square_peak() {
    let flat = fig1_points("square").unwrap();
    assert_eq!(flat.len(), 2 * 49);
    let peak = flat.chunks(2).map(|p| (p[0], p[1])).fold((0.0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
    assert!((peak.0 - 0.5).abs() < 1e-12);
    assert!(fig1_points("diagonal").is_err());
}

#[test]
fn scaling_layout() {
    let v = ising_gas_curve(100, 0.0, 10).unwrap();
    assert_eq!(v.len(), 20);
    assert!((v[0] - 1.0).abs() < 1e-12);
    assert!((v[13] - 0.5 * 4f64.log2()).abs() < 1e-12);
    assert!(ising_gas_curve(3, 0.0, 6).is_err());
    assert!(ising_gas_curve(3, 0.5, 2).is_err());
}

#[test]
fn frustration_payload() {
    let v: serde_json::Value = serde_json::from_str(&frustration_json("ising-gas", 4, 0.0).unwrap()).unwrap();
    assert!((v["f"].as_f64().unwrap() - 0.75).abs() < 1e-12);
    assert!(frustration_json("mg", 9, 0.0).is_err());
    assert!(frustration_json("triangle", 2, 0.0).is_err());
}
