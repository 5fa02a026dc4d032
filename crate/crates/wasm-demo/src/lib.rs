//! Browser bindings for the demo page. Every function takes the edge-list
//! text format and returns a JSON object with `ok` set, or `ok: false` and
//! an `error` message.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use rvd_core::colorer::color_k4mf as run_colorer;
use rvd_core::exact::optimal_coloring;
use rvd_core::gadgets::{build_gadget, forward_coloring, Family};
use rvd_core::verify::verify_coloring;
use rvd_core::{Error, Graph, VertexColoring};

fn edges_json(g: &Graph) -> Value {
    g.edges().map(|(a, b)| json!([a + 1, b + 1])).collect()
}

fn respond(result: Result<Value, Error>) -> String {
    match result {
        Ok(mut v) => {
            v["ok"] = json!(true);
            v.to_string()
        }
        Err(e) => json!({ "ok": false, "error": e.to_string() }).to_string(),
    }
}

/// Colors a K4-minor-free graph with at most Δ colors and verifies it.
#[wasm_bindgen]
pub fn color_k4mf(edge_list: &str) -> String {
    respond((|| {
        let g = Graph::parse_edge_list(edge_list)?;
        let (c, trace) = run_colorer(&g)?;
        let verified = verify_coloring(&g, &c)?.verdict;
        Ok(json!({
            "n": g.n(),
            "edges": edges_json(&g),
            "colors": c.as_slice(),
            "palette": c.palette_size(),
            "delta": g.max_degree(),
            "verified": verified,
            "trace": trace.to_string(),
        }))
    })())
}

/// Checks a coloring given as whitespace-separated colors of vertices
/// `1..=n` in order.
#[wasm_bindgen]
pub fn verify(edge_list: &str, colors: &str) -> String {
    respond((|| {
        let g = Graph::parse_edge_list(edge_list)?;
        let parsed: Vec<u32> = colors
            .split_whitespace()
            .enumerate()
            .map(|(i, t)| {
                t.parse().map_err(|_| Error::Parse { line: 1, msg: format!("bad color {t:?} at position {}", i + 1) })
            })
            .collect::<Result<_, _>>()?;
        if parsed.len() != g.n() {
            return Err(Error::ColoringSize { expected: g.n(), found: parsed.len() });
        }
        let c = VertexColoring::new(parsed)?;
        let report = verify_coloring(&g, &c)?;
        let failing = report.failing_pair.map(|(x, y)| json!([x + 1, y + 1]));
        Ok(json!({
            "n": g.n(),
            "edges": edges_json(&g),
            "colors": c.as_slice(),
            "palette": c.palette_size(),
            "verdict": report.verdict,
            "failing_pair": failing,
        }))
    })())
}

/// Builds a gadget (`kind` is "bipartite" or "split") with `copies` copies of
/// the source vertices, colored by the forward translation of an optimal
/// proper coloring.
#[wasm_bindgen]
pub fn gadget(edge_list: &str, kind: &str, copies: usize) -> String {
    respond((|| {
        let family = match kind {
            "bipartite" => Family::Bipartite,
            "split" => Family::Split,
            other => return Err(Error::Precondition(format!("unknown gadget kind {other:?}"))),
        };
        if copies == 0 {
            return Err(Error::Precondition("copies must be positive".into()));
        }
        let g = Graph::parse_edge_list(edge_list)?;
        let gadget = build_gadget(&g, family.kind(copies))?;
        let c = forward_coloring(&g, &optimal_coloring(&g), &gadget)?;
        let verified = verify_coloring(&gadget.graph, &c)?.verdict;
        let roles: Vec<String> =
            gadget.role_map_text().lines().map(|l| l.split_once(' ').map_or("", |x| x.1).to_string()).collect();
        Ok(json!({
            "n": gadget.graph.n(),
            "edges": edges_json(&gadget.graph),
            "colors": c.as_slice(),
            "palette": c.palette_size(),
            "roles": roles,
            "verified": verified,
        }))
    })())
}
