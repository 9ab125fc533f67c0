//! Browser bindings: chart rendering, element lookup and configurations
//! under a filling rule `q`.

use serde_json::json;
use so42_core::addresses::{
    electron_configuration, element, element_at, element_by_symbol, shell_sequence, Address, ElementRecord, FillingRule,
};
use so42_core::chart::{build_chart, render_html, render_text, Layout};
use wasm_bindgen::prelude::*;

/// Chart as an HTML `<table>` fragment, or plain text when `layout` is `"text"`.
pub fn chart(max_z: u32, layout: &str) -> Result<String, String> {
    let chart = build_chart(u64::from(max_z)).map_err(|e| e.to_string())?;
    match layout {
        "standard" => Ok(render_html(&chart, Layout::Standard)),
        "scerri-like" => Ok(render_html(&chart, Layout::ScerriLike)),
        "text" => Ok(render_text(&chart)),
        other => Err(format!("unknown layout {other:?}")),
    }
}

fn lookup(query: &str) -> Result<ElementRecord, String> {
    let q = query.trim();
    let found = if let Ok(z) = q.parse::<u64>() {
        element(z)
    } else if q.contains(',') {
        q.parse::<Address>().and_then(|a| element_at(&a))
    } else {
        element_by_symbol(q)
    };
    found.map_err(|e| e.to_string())
}

/// Element by atomic number, symbol or address, as JSON.
pub fn element_info(query: &str) -> Result<String, String> {
    let e = lookup(query)?;
    Ok(json!({
        "z": e.z,
        "symbol": e.symbol,
        "name": e.name,
        "address": e.address.to_string(),
        "entry": e.entry.to_string(),
        "j": e.address.j().to_string(),
        "parity": e.parity.to_string(),
        "discovery_year": e.discovery_year,
    })
    .to_string())
}

/// Configuration of `z` under the rule with parameter `q` (e.g. `"1"`, `"-1/2"`), as JSON.
pub fn configuration(z: u32, q: &str) -> Result<String, String> {
    let rule: FillingRule = format!("q={}", q.trim()).parse().map_err(|e: so42_core::Error| e.to_string())?;
    let config = electron_configuration(u64::from(z), rule).map_err(|e| e.to_string())?;
    let order: Vec<String> = shell_sequence(rule, config.occupancies.len()).iter().map(ToString::to_string).collect();
    Ok(json!({
        "z": z,
        "rule": rule.name(),
        "configuration": config.to_string(),
        "closed_core": config.closed_core_count,
        "filling_order": order,
    })
    .to_string())
}

#[wasm_bindgen(js_name = chart)]
pub fn chart_js(max_z: u32, layout: &str) -> Result<String, JsError> {
    chart(max_z, layout).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = elementInfo)]
pub fn element_info_js(query: &str) -> Result<String, JsError> {
    element_info(query).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = configuration)]
pub fn configuration_js(z: u32, q: &str) -> Result<String, JsError> {
    configuration(z, q).map_err(|e| JsError::new(&e))
}
