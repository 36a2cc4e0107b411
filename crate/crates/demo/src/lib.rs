//! Browser demo. Each exported function takes plain numbers and returns a JSON
//! string so the page needs no bindings beyond `wasm-bindgen`'s strings.

use lct_core::hermite_basis::{
    dispersion_estimate, synthesize, uniform_grid, BasisParams, CoefficientExpansion,
    SampledWavefunction,
};
use lct_core::metaplectic_rep::{build_unitary, verify_homomorphism};
use lct_core::metric::Metric;
use lct_core::symplectic_group::{exp_sl2, exp_sp, from_angles, ThetaAngles};
use nalgebra::DVector;
use num_complex::Complex64;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

const MAX_CUTOFF: usize = 128;
const PLOT_POINTS: usize = 401;

fn check_cutoff(cutoff: usize) -> Result<(), String> {
    if cutoff > MAX_CUTOFF {
        return Err(format!(
            "cutoff {cutoff} exceeds the demo limit of {MAX_CUTOFF}"
        ));
    }
    Ok(())
}

fn moments(wf: &SampledWavefunction) -> Value {
    match dispersion_estimate(wf) {
        Ok(m) => serde_json::to_value(m).expect("plain data"),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

/// Applies the truncated LCT to `phi(n)` centered at the origin and samples
/// the state before and after.
pub fn transform_basis_state(
    n: usize,
    b: f64,
    angles: [f64; 3],
    cutoff: usize,
) -> Result<Value, String> {
    check_cutoff(cutoff)?;
    if n >= cutoff {
        return Err(format!("n = {n} must be below the cutoff {cutoff}"));
    }
    let params = BasisParams::new(0.0, 0.0, b).map_err(|e| e.to_string())?;
    let mut coeffs = vec![Complex64::new(0.0, 0.0); cutoff];
    coeffs[n] = Complex64::new(1.0, 0.0);
    let before = CoefficientExpansion::new(params, coeffs).map_err(|e| e.to_string())?;
    let theta = ThetaAngles::single(angles[0], angles[1], angles[2]);
    let u = build_unitary(&theta, b, cutoff).map_err(|e| e.to_string())?;
    let kets = &u.u.matrix * DVector::from_vec(before.ket_coefficients());
    let after = CoefficientExpansion::from_ket_coefficients(params, kets.as_slice())
        .map_err(|e| e.to_string())?;

    let half = (12.0 + 3.0 * (2.0 * n as f64 + 1.0).sqrt()) * params.a().sqrt();
    let grid = uniform_grid(-half, half, PLOT_POINTS);
    let wf0 = synthesize(&before, grid.clone()).map_err(|e| e.to_string())?;
    let wf1 = synthesize(&after, grid.clone()).map_err(|e| e.to_string())?;
    let s = exp_sl2(&from_angles(&theta, Metric::euclidean(1)).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    Ok(json!({
        "x": grid,
        "before": wf0.values().iter().map(|v| v.norm()).collect::<Vec<_>>(),
        "after": wf1.values().iter().map(|v| v.norm()).collect::<Vec<_>>(),
        "after_re": wf1.values().iter().map(|v| v.re + 0.0).collect::<Vec<_>>(),
        "after_im": wf1.values().iter().map(|v| v.im + 0.0).collect::<Vec<_>>(),
        "moments_before": moments(&wf0),
        "moments_after": moments(&wf1),
        "symplectic": s.blocks_json(),
        "unitarity_residual": u.unitarity_residual(),
    }))
}

/// One-dimensional exponential map by both routes.
pub fn exponential_map(angles: [f64; 3]) -> Result<Value, String> {
    let m = from_angles(
        &ThetaAngles::single(angles[0], angles[1], angles[2]),
        Metric::euclidean(1),
    )
    .map_err(|e| e.to_string())?;
    let closed = exp_sl2(&m).map_err(|e| e.to_string())?;
    let series = exp_sp(&m).map_err(|e| e.to_string())?;
    Ok(json!({
        "algebra": m.matrix().row_iter().map(|r| r.iter().copied().collect::<Vec<_>>()).collect::<Vec<_>>(),
        "blocks": closed.blocks_json(),
        "det": closed.det(),
        "residual": closed.residual(),
        "series_difference": (closed.matrix() - series.matrix()).amax(),
    }))
}

pub fn homomorphism(angles: [f64; 3], b: f64, cutoff: usize, tol: f64) -> Result<Value, String> {
    check_cutoff(cutoff)?;
    let theta = ThetaAngles::single(angles[0], angles[1], angles[2]);
    let r = verify_homomorphism(&theta, b, cutoff, tol).map_err(|e| e.to_string())?;
    Ok(serde_json::to_value(r).expect("plain data"))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = transformBasisState)]
pub fn transform_basis_state_js(
    n: usize,
    b: f64,
    theta_plus: f64,
    theta_minus: f64,
    theta_cross: f64,
    cutoff: usize,
) -> Result<String, JsValue> {
    to_js(transform_basis_state(
        n,
        b,
        [theta_plus, theta_minus, theta_cross],
        cutoff,
    ))
}

#[wasm_bindgen(js_name = exponentialMap)]
pub fn exponential_map_js(
    theta_plus: f64,
    theta_minus: f64,
    theta_cross: f64,
) -> Result<String, JsValue> {
    to_js(exponential_map([theta_plus, theta_minus, theta_cross]))
}

#[wasm_bindgen(js_name = homomorphism)]
pub fn homomorphism_js(
    theta_plus: f64,
    theta_minus: f64,
    theta_cross: f64,
    b: f64,
    cutoff: usize,
    tol: f64,
) -> Result<String, JsValue> {
    to_js(homomorphism(
        [theta_plus, theta_minus, theta_cross],
        b,
        cutoff,
        tol,
    ))
}
