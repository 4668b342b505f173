//! WebAssembly bindings behind the static demo page in `www/`.
//!
//! Each exported function has a plain-Rust twin returning `Result<_, String>`
//! so the logic can be tested natively.

use frustra::closed_forms::{ising_gas_asymptote, ising_gas_rho_k};
use frustra::frustration::frustration_degree_model;
use frustra::interference::{default_fig1_grid, rvb_interference_curve, PathShape};
use frustra::models::{ModelKind, ModelSpec};
use wasm_bindgen::prelude::*;

/// Largest chain the page will enumerate for the frustration degree.
pub const MAX_FRUSTRATION_SITES: usize = 16;

/// Interference ratio on the default density grid, flattened as
/// `[d0, r0, d1, r1, …]`.
pub fn fig1_points(shape: &str) -> Result<Vec<f64>, String> {
    let shape: PathShape = shape.parse().map_err(|e: frustra::Error| e.to_string())?;
    let curve = rvb_interference_curve(shape, &default_fig1_grid()).map_err(|e| e.to_string())?;
    Ok(curve
        .into_iter()
        .filter_map(|p| p.ratio.map(|r| [p.d, r]))
        .flatten()
        .collect())
}

/// Block entropies for `k = 1..=k_max` followed by the matching
/// `½ log₂((1−λ²)k)` values, so the result has length `2·k_max`.
pub fn ising_gas_curve(m: usize, lambda: f64, k_max: usize) -> Result<Vec<f64>, String> {
    if k_max == 0 || k_max >= 2 * m {
        return Err(format!("k_max must lie in 1..{}", 2 * m));
    }
    let mut entropies = Vec::with_capacity(2 * k_max);
    for k in 1..=k_max {
        entropies.push(ising_gas_rho_k(m, lambda, k).map_err(|e| e.to_string())?.entropy());
    }
    for k in 1..=k_max {
        entropies.push(ising_gas_asymptote(k, lambda).unwrap_or(f64::NAN));
    }
    Ok(entropies)
}

/// Frustration report as JSON, e.g. `{"f":0.75,"closed_form":0.75,…}`.
pub fn frustration_json(model: &str, m: usize, lambda: f64) -> Result<String, String> {
    let kind: ModelKind = model.parse().map_err(|e: frustra::Error| e.to_string())?;
    let spec = ModelSpec {
        lambda,
        ..ModelSpec::new(kind, m)
    };
    spec.validate().map_err(|e| e.to_string())?;
    if spec.num_sites() > MAX_FRUSTRATION_SITES {
        return Err(format!(
            "{} sites is more than this page enumerates ({MAX_FRUSTRATION_SITES})",
            spec.num_sites()
        ));
    }
    let report = frustration_degree_model(&spec).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn fig1_curve(shape: &str) -> Result<Vec<f64>, JsError> {
    fig1_points(shape).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn ising_gas_scaling(m: usize, lambda: f64, k_max: usize) -> Result<Vec<f64>, JsError> {
    ising_gas_curve(m, lambda, k_max).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn frustration_degree(model: &str, m: usize, lambda: f64) -> Result<String, JsError> {
    frustration_json(model, m, lambda).map_err(|e| JsError::new(&e))
}
