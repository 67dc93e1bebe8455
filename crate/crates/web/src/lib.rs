//! Browser bindings for the static demo page in `www/`.
//!
//! Each exported function takes plain strings and numbers and returns a
//! JSON string; errors become JavaScript exceptions carrying the message.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use permenergy::bounds::{full_report, ReportConfig};
use permenergy::closed_forms::odd_cycle_energy_ratio;
use permenergy::format::parse_graphs;
use permenergy::harness::{family_table, FamilyKind};
use permenergy::permanent::perm_poly;
use permenergy::{perm_roots, to_graph6, EngineCaps, Graph, GraphFormat};

/// Largest graph the page accepts; keeps the exact engines interactive and
/// on a single thread.
pub const DEMO_MAX_N: usize = 14;

fn config() -> ReportConfig {
    let caps = EngineCaps { minors_max_n: DEMO_MAX_N, ryser_max_n: DEMO_MAX_N, ..EngineCaps::default() };
    ReportConfig { caps, ..ReportConfig::default() }
}

fn parse_one(input: &str, format: &str) -> Result<Graph, String> {
    let format: GraphFormat = format.parse()?;
    let mut graphs = parse_graphs(input, format).map_err(|(line, e)| {
        if line > 0 {
            format!("line {line}: {e}")
        } else {
            e.to_string()
        }
    })?;
    match graphs.len() {
        1 => Ok(graphs.remove(0)),
        0 => Err("no graph in input".into()),
        k => Err(format!("expected one graph, found {k}")),
    }
}

/// Polynomial, roots, energies and every theorem verdict for one graph.
pub fn analyze_graph(input: &str, format: &str) -> Result<Value, String> {
    let g = parse_one(input, format)?;
    let cfg = config();
    let poly = perm_poly(&g, cfg.engine, &cfg.caps).map_err(|e| e.to_string())?;
    let roots = perm_roots(&poly).map_err(|e| e.to_string())?;
    let report = full_report(&g, &cfg).map_err(|e| e.to_string())?;
    Ok(json!({
        "graph6": to_graph6(&g),
        "edges": g.edges(),
        "poly": poly.to_string(),
        "coeffs": poly.to_json().coeffs,
        "roots": roots.to_json().roots,
        "report": report,
    }))
}

/// graph6 string of a standard family member.
pub fn family_graph6(kind: &str, n: usize) -> Result<String, String> {
    let family = match kind.parse::<FamilyKind>().map_err(|e| e.to_string())? {
        FamilyKind::Cycle => permenergy::Family::Cycle(n),
        FamilyKind::Star if n >= 2 => permenergy::Family::Star(n - 1),
        FamilyKind::Star => return Err("a star needs at least 2 vertices".into()),
        FamilyKind::Path => permenergy::Family::Path(n),
        FamilyKind::Complete => permenergy::Family::Complete(n),
        FamilyKind::Empty => permenergy::Family::Empty(n),
    };
    let g = family.build().map_err(|e| e.to_string())?;
    if g.n() > DEMO_MAX_N {
        return Err(format!("the demo is limited to {DEMO_MAX_N} vertices"));
    }
    Ok(to_graph6(&g))
}

/// Generic-engine energy and closed form for `n` in `from..=to`, plus the
/// analytic odd-cycle ratio `E_per(C_n)/n` up to `ratio_max_n`.
pub fn energy_curve(kind: &str, from: usize, to: usize, ratio_max_n: usize) -> Result<Value, String> {
    let kind: FamilyKind = kind.parse().map_err(|e: permenergy::Error| e.to_string())?;
    if to > DEMO_MAX_N {
        return Err(format!("the demo is limited to {DEMO_MAX_N} vertices"));
    }
    let rows = family_table(kind, from..=to, &config()).map_err(|e| e.to_string())?;
    let mut ratio = Vec::new();
    let mut n = 3;
    while n <= ratio_max_n {
        ratio.push(json!([n, odd_cycle_energy_ratio(n).map_err(|e| e.to_string())?]));
        n = if n < 101 { n + 2 } else { (n * 11 / 10) | 1 };
    }
    Ok(json!({ "rows": rows, "odd_cycle_ratio": ratio, "limit": 4.0 / std::f64::consts::PI }))
}

fn to_js(r: Result<Value, String>) -> Result<String, JsValue> {
    r.map(|v| v.to_string()).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn analyze(input: &str, format: &str) -> Result<String, JsValue> {
    to_js(analyze_graph(input, format))
}

#[wasm_bindgen]
pub fn family(kind: &str, n: usize) -> Result<String, JsValue> {
    family_graph6(kind, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn curve(kind: &str, from: usize, to: usize, ratio_max_n: usize) -> Result<String, JsValue> {
    to_js(energy_curve(kind, from, to, ratio_max_n))
}
