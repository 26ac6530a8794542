//! Browser bindings: enumerate, classify and list neighbors of matchings.
//! Every export returns a JSON string.

use dcm_core::compat::neighbors;
use dcm_core::families::FamilyIndex;
use dcm_core::{enumerate_matchings, Matching};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Sizes beyond this make the page sluggish.
pub const MAX_K: usize = 9;

fn check_k(k: usize) -> Result<(), String> {
    if (1..=MAX_K).contains(&k) {
        Ok(())
    } else {
        Err(format!("k must be in 1..={MAX_K}"))
    }
}

pub fn enumerate_json(k: usize) -> Result<String, String> {
    check_k(k)?;
    let names: Vec<String> = enumerate_matchings(k).iter().map(ToString::to_string).collect();
    Ok(json!(names).to_string())
}

pub fn classify_json(k: usize, matching: &str) -> Result<String, String> {
    check_k(k)?;
    let m = Matching::parse_with_k(matching, k).map_err(|e| e.to_string())?;
    let c = FamilyIndex::new(k).classify(&m).map_err(|e| e.to_string())?;
    Ok(json!({
        "matching": m.to_string(),
        "edges": m.edges(),
        "class": c.class.name(),
        "witness": c.witness.map(|w| w.to_string()),
        "degree": neighbors(&m).len(),
    })
    .to_string())
}

pub fn neighbors_json(k: usize, matching: &str) -> Result<String, String> {
    check_k(k)?;
    let m = Matching::parse_with_k(matching, k).map_err(|e| e.to_string())?;
    let ns: Vec<_> = neighbors(&m)
        .iter()
        .map(|x| json!({ "matching": x.to_string(), "edges": x.edges() }))
        .collect();
    Ok(json!({ "matching": m.to_string(), "edges": m.edges(), "neighbors": ns }).to_string())
}

#[wasm_bindgen]
pub fn enumerate(k: usize) -> Result<String, JsError> {
    enumerate_json(k).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn classify(k: usize, matching: &str) -> Result<String, JsError> {
    classify_json(k, matching).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = neighbors)]
pub fn neighbors_js(k: usize, matching: &str) -> Result<String, JsError> {
    neighbors_json(k, matching).map_err(|e| JsError::new(&e))
}
