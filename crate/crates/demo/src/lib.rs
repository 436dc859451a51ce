//! Browser bindings for the static page in `www/`: normal forms and
//! equality, a drawing of the branch, and structure synthesis.

use baumslag::geometry::{emit_svg, SvgOptions};
use baumslag::semigroup::{equal, normalize};
use baumslag::synth::{parse_generators, synthesize_auto, SynthConfig};
use baumslag::{BsParams, SgWord};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Synthesis in the page runs on the main thread.
const DEMO_BUDGET: usize = 50_000;

fn words(text: &str) -> Result<Vec<SgWord>, String> {
    text.split_whitespace().map(|w| w.parse().map_err(|e: baumslag::Error| e.to_string())).collect()
}

fn params(m: u32, n: u32) -> Result<BsParams, String> {
    BsParams::new(m, n).map_err(|e| e.to_string())
}

/// `{"normal_forms": [...], "equal": bool}` for whitespace-separated words.
pub fn compare_words(m: u32, n: u32, text: &str) -> Result<String, String> {
    let p = params(m, n)?;
    let ws = words(text)?;
    let forms: Vec<_> = ws.iter().map(|w| json!({"word": w.to_string(), "normal_form": normalize(w, p).to_string()})).collect();
    let all_equal = ws.windows(2).all(|pair| equal(&pair[0], &pair[1], p));
    Ok(json!({"normal_forms": forms, "equal": all_equal}).to_string())
}

pub fn branch(m: u32, n: u32, text: &str) -> Result<String, String> {
    let ws = words(text)?;
    emit_svg(&ws, params(m, n)?, &SvgOptions::default()).map_err(|e| e.to_string())
}

/// Handedness, `λ` and the verification summary for one generator per line.
pub fn synth(m: u32, n: u32, generators: &str) -> Result<String, String> {
    let gens = parse_generators(generators).map_err(|e| e.to_string())?;
    let config = SynthConfig { bound: 6, budget: DEMO_BUDGET, ..SynthConfig::default() };
    let (s, report) = synthesize_auto(&gens, params(m, n)?, &config).map_err(|e| e.to_string())?;
    Ok(json!({
        "handedness": s.handedness,
        "lambda": s.lambda,
        "language_states": s.language.states(),
        "summary": report.summary(),
        "language_dot": s.language.to_dot("L"),
    })
    .to_string())
}

#[wasm_bindgen(js_name = compareWords)]
pub fn compare_words_js(m: u32, n: u32, text: &str) -> Result<String, JsError> {
    compare_words(m, n, text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = branchSvg)]
pub fn branch_js(m: u32, n: u32, text: &str) -> Result<String, JsError> {
    branch(m, n, text).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = synthesize)]
pub fn synth_js(m: u32, n: u32, generators: &str) -> Result<String, JsError> {
    synth(m, n, generators).map_err(|e| JsError::new(&e))
}
