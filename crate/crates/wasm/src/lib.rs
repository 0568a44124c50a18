//! Browser bindings. Each export takes and returns JSON text so the page
//! never has to know the Rust types; the plain functions are what the
//! native tests call.

use affine_frt::aff;
use affine_frt::rmatrix::{check_pybe_family, FreeFermion, GammaElement};
use affine_frt::scalar::{QSpec, Sampler, Scalar};
use affine_frt::slqhat::{self, Reducibility};
use affine_frt::suite;
use serde_json::{json, Value};
use wasm_bindgen::prelude::wasm_bindgen;

fn gamma(text: &str, what: &str) -> Result<GammaElement, String> {
    serde_json::from_str(text).map_err(|e| format!("{what}: {e}"))
}

fn scalar(text: &str, what: &str) -> Result<Scalar, String> {
    text.trim().parse().map_err(|e| format!("{what}: {e}"))
}

/// A random element of Γ, as the JSON the other calls accept.
pub fn sample_gamma(seed: u64) -> String {
    let g = aff::gamma_generic(&mut Sampler::new(seed));
    serde_json::to_string_pretty(&g).expect("json")
}

/// The Yang-Baxter residual for the free-fermionic family at (x, y).
pub fn ybe(x: &str, y: &str) -> Result<Value, String> {
    let (x, y) = (gamma(x, "x")?, gamma(y, "y")?);
    let rep = check_pybe_family(&FreeFermion, &[(x.clone(), y.clone())]);
    Ok(json!({
        "pass": rep.pass,
        "x∘y": x.compose(&y),
        "residual": rep.samples[0].residual,
    }))
}

/// Classification of V_x ⊗ V_y as a check record.
pub fn classify(x: &str, y: &str) -> Result<Value, String> {
    let (x, y) = (gamma(x, "x")?, gamma(y, "y")?);
    serde_json::to_value(suite::classify_check(&x, &y)).map_err(|e| e.to_string())
}

/// Is W(m) ⊗ W(n) with the given ratio of evaluation points reducible?
pub fn reducibility(m: usize, n: usize, q: &str, ratio: &str) -> Result<Value, String> {
    if m == 0 || n == 0 || m + n > 5 {
        return Err("need 1 <= m, n and m + n <= 5".into());
    }
    let q = QSpec::generic(scalar(q, "q")?, affine_frt::scalar::DEFAULT_GUARD).map_err(|e| format!("q: {e}"))?;
    let ratio = scalar(ratio, "ratio")?;
    if ratio.is_zero() {
        return Err("ratio: must be nonzero".into());
    }
    let predicted = slqhat::predicted_ratios(m, n, &q).contains(&ratio);
    let (verdict, algebra_dim) = slqhat::reducibility_verdict(m, n, &ratio, &q).map_err(|e| e.to_string())?;
    let (label, witness) = match verdict {
        Reducibility::Irreducible => ("irreducible", None),
        Reducibility::Reducible { witness } => ("reducible", Some(witness.dim())),
        Reducibility::Undetermined => ("undetermined", None),
    };
    Ok(json!({
        "verdict": label,
        "predicted_reducible": predicted,
        "predicted_ratios": slqhat::predicted_ratios(m, n, &q),
        "witness_dim": witness,
        "algebra_dim": algebra_dim,
        "cg_dims": slqhat::cg_dims(m, n),
    }))
}

fn to_js(r: Result<Value, String>) -> String {
    let v = r.unwrap_or_else(|e| json!({"error": e}));
    serde_json::to_string_pretty(&v).expect("json")
}

#[wasm_bindgen(js_name = sampleGamma)]
pub fn sample_gamma_js(seed: u32) -> String {
    sample_gamma(seed as u64)
}

#[wasm_bindgen(js_name = checkYbe)]
pub fn ybe_js(x: &str, y: &str) -> String {
    to_js(ybe(x, y))
}

#[wasm_bindgen(js_name = classifyPair)]
pub fn classify_js(x: &str, y: &str) -> String {
    to_js(classify(x, y))
}

#[wasm_bindgen(js_name = reducibility)]
pub fn reducibility_js(m: u32, n: u32, q: &str, ratio: &str) -> String {
    to_js(reducibility(m as usize, n as usize, q, ratio))
}
