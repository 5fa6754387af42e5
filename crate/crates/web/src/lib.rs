//! wasm-bindgen entry points for the static demo in `www/`.
//!
//! Every function takes a preset name and a JSON object of preset
//! parameters (`{"gg": 0.5, "gl": 0.45, "g": 1}`) and returns JSON text.
//! Errors surface as a thrown string.

use serde_json::{json, Value};
use thirdq::dynamics::{evolve_moments, observable_series, MomentState};
use thirdq::model::{build_structure, preset, PresetModel, PresetParams};
use thirdq::spectrum::analyze;
use thirdq::symmetry::{check_symmetry, classify_beta_pt, ParityKind, BETA_CLASS_TOL, SYMMETRY_TOL};
use thirdq::C64;
use wasm_bindgen::prelude::*;

const MAX_ORDER_LIMIT: usize = 12;
const MAX_STEPS: usize = 5000;

fn load(name: &str, params: &str) -> Result<PresetModel, String> {
    let p: PresetParams = serde_json::from_str(params).map_err(|e| format!("parameters: {e}"))?;
    let kind = name.parse().map_err(|e: thirdq::Error| e.to_string())?;
    preset(kind, &p).map_err(|e| e.to_string())
}

fn pair(z: C64) -> Value {
    json!([z.re, z.im])
}

/// Rapidities, gap and Liouvillian eigenvalues up to `max_order`.
pub fn spectrum_json(name: &str, params: &str, max_order: usize) -> Result<String, String> {
    if max_order > MAX_ORDER_LIMIT {
        return Err(format!("max order is limited to {MAX_ORDER_LIMIT} here"));
    }
    let pm = load(name, params)?;
    let rep = analyze(&build_structure(&pm.model).x, max_order).map_err(|e| e.to_string())?;
    let lambdas: Vec<Value> = rep
        .spectrum
        .entries
        .iter()
        .map(|e| json!({ "re": e.lambda.re, "im": e.lambda.im, "multiplicity": e.multiplicity }))
        .collect();
    Ok(json!({
        "betas": rep.betas.values.iter().map(|z| pair(*z)).collect::<Vec<_>>(),
        "gap": rep.gap,
        "validity": rep.spectrum.validity,
        "jordan_blocks": rep.jordan.all_blocks(),
        "lambdas": lambdas,
        "warnings": pm.warnings,
    })
    .to_string())
}

/// Huber and matrix-level PT report with the rapidity phase.
pub fn pt_check_json(name: &str, params: &str) -> Result<String, String> {
    let pm = load(name, params)?;
    let report = check_symmetry(&pm.model, ParityKind::Reflection, SYMMETRY_TOL).map_err(|e| e.to_string())?;
    let betas = thirdq::spectrum::beta_spectrum(&build_structure(&pm.model).x).map_err(|e| e.to_string())?;
    let mut v = serde_json::to_value(&report).map_err(|e| e.to_string())?;
    v["beta_phase"] = json!(classify_beta_pt(&betas, BETA_CLASS_TOL));
    Ok(v.to_string())
}

/// Moment dynamics from `⟨a_i⟩ = mean`, `⟨a_i† a_i⟩ = occ` on every mode.
pub fn dynamics_json(name: &str, params: &str, t1: f64, steps: usize, mean: f64, occ: f64) -> Result<String, String> {
    if !(t1 > 0.0 && t1.is_finite()) || steps == 0 || steps > MAX_STEPS {
        return Err(format!("need t1 > 0 and 1 ≤ steps ≤ {MAX_STEPS}"));
    }
    let pm = load(name, params)?;
    let n = pm.model.n();
    let s = build_structure(&pm.model);
    let state0 = MomentState::from_occupations(&vec![C64::new(mean, 0.0); n], &vec![occ; n]).map_err(|e| e.to_string())?;
    let times: Vec<f64> = (0..=steps).map(|k| t1 * k as f64 / steps as f64).collect();
    let ev = evolve_moments(&s.x, &s.y, &state0, &times).map_err(|e| e.to_string())?;
    let series = observable_series(&ev.states, pm.frame.as_ref()).map_err(|e| e.to_string())?;
    Ok(json!({
        "times": series.times,
        "columns": series.names,
        "values": series.values,
        "early_stop": ev.early_stop,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn spectrum(name: &str, params: &str, max_order: usize) -> Result<String, JsValue> {
    spectrum_json(name, params, max_order).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn pt_check(name: &str, params: &str) -> Result<String, JsValue> {
    pt_check_json(name, params).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn dynamics(name: &str, params: &str, t1: f64, steps: usize, mean: f64, occ: f64) -> Result<String, JsValue> {
    dynamics_json(name, params, t1, steps, mean, occ).map_err(|e| JsValue::from_str(&e))
}
