//! wasm-bindgen entry points for the static demo page in `www/`.
//!
//! Every export returns a JSON string. The `*_json` functions hold the logic
//! and return `Result<String, String>` so they can be tested natively.

use linedigraph::families::FamilySpec;
use linedigraph::metrics::{classify_behavior, inner_diameter_sequence_with, metric_report};
use linedigraph::sequences::{forbidden_word_digraph, order_sequence_with, ForbiddenWordSpec, OrderOptions, WordBase};
use linedigraph::{Digraph, IterLimits};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Browser-side cap on the order of any iterate.
pub const DEMO_MAX_ORDER: usize = 200_000;
/// Metric reports stream one BFS per vertex; keep the page responsive.
pub const DEMO_MAX_METRIC_ORDER: usize = 6_000;
/// Arcs are only shipped to the page for drawing below this order.
pub const DEMO_MAX_DRAWN_ORDER: usize = 400;

fn limits() -> IterLimits {
    IterLimits::with_max_order(DEMO_MAX_ORDER)
}

fn family(tag: &str, a: u32, b: u32) -> Result<Digraph, String> {
    let params: Vec<usize> = match tag {
        "starcycle" | "pendant" => vec![a as usize],
        _ => vec![a as usize, b as usize],
    };
    let spec = FamilySpec::from_tag(tag, &params).map_err(|e| e.to_string())?;
    spec.build().map_err(|e| e.to_string())
}

/// Build a family member, apply `line` line-digraph steps and report its
/// inner metrics, plus the arc list when it is small enough to draw.
pub fn describe_json(tag: &str, a: u32, b: u32, line: u32) -> Result<String, String> {
    let g0 = family(tag, a, b)?;
    let (g, _) = g0.line_iterate_with(line as usize, limits()).map_err(|e| e.to_string())?;
    let metrics = if g.is_empty() {
        None
    } else if g.order() <= DEMO_MAX_METRIC_ORDER {
        Some(metric_report(&g).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let drawable = g.order() <= DEMO_MAX_DRAWN_ORDER;
    let arcs: Option<Vec<[usize; 2]>> = drawable.then(|| g.arcs().iter().map(|&(u, v)| [u, v]).collect());
    let labels = if drawable { g.labels().map(<[String]>::to_vec) } else { None };
    let value = json!({
        "name": g0.name().unwrap_or(tag),
        "line": line,
        "order": g.order(),
        "size": g.size(),
        "metrics": metrics,
        "arcs": arcs,
        "labels": labels,
    });
    Ok(value.to_string())
}

/// Inner diameters of `L^0 .. L^k` of a family member, with the behaviour class.
pub fn diameter_sequence_json(tag: &str, a: u32, b: u32, k: u32) -> Result<String, String> {
    let g = family(tag, a, b)?;
    let behavior = classify_behavior(&g).map_err(|e| e.to_string())?;
    let seq = inner_diameter_sequence_with(&g, k as usize, limits()).map_err(|e| e.to_string())?;
    let value = json!({
        "name": g.name().unwrap_or(tag),
        "values": seq.values,
        "empty_from": seq.empty_from,
        "classification": behavior,
    });
    Ok(value.to_string())
}

/// Orders of the iterated line digraphs of B(sigma, n), or SF(sigma - 1, n)
/// when `square_free` is set, after removing vertices containing a word of
/// `forbidden` (comma separated).
pub fn forbidden_orders_json(sigma: u32, n: u32, forbidden: &str, k: u32, square_free: bool) -> Result<String, String> {
    let words: Vec<&str> = forbidden.split(',').map(str::trim).filter(|w| !w.is_empty()).collect();
    let base = if square_free { WordBase::SquareFree } else { WordBase::DeBruijn };
    let spec = ForbiddenWordSpec::build(sigma as usize, n as usize, &words, base).map_err(|e| e.to_string())?;
    let g = forbidden_word_digraph(&spec).map_err(|e| e.to_string())?;
    let opts = OrderOptions {
        limits: limits(),
        ..OrderOptions::default()
    };
    let report = order_sequence_with(&g, k as usize, &opts).map_err(|e| e.to_string())?;
    serde_json::to_string(&report.with_forbidden(&spec)).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn describe(tag: &str, a: u32, b: u32, line: u32) -> Result<String, JsValue> {
    describe_json(tag, a, b, line).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = diameterSequence)]
pub fn diameter_sequence(tag: &str, a: u32, b: u32, k: u32) -> Result<String, JsValue> {
    diameter_sequence_json(tag, a, b, k).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = forbiddenOrders)]
pub fn forbidden_orders(sigma: u32, n: u32, forbidden: &str, k: u32, square_free: bool) -> Result<String, JsValue> {
    forbidden_orders_json(sigma, n, forbidden, k, square_free).map_err(|e| JsValue::from_str(&e))
}
