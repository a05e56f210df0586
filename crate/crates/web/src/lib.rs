//! Browser bindings. Each export takes and returns strings; errors surface
//! as thrown JS strings.

use navrel::constructions::expr_to_automaton;
use navrel::eval::evaluate as eval_on;
use navrel::expr::parse;
use navrel::graph::Graph;
use navrel::rewrite::{default_certificate_config, rewrite as run_pipeline, Pipeline};
use wasm_bindgen::prelude::*;

/// Pairs of node names `e` relates on the graph, as a JSON array.
pub fn evaluate_json(expr: &str, graph_json: &str) -> Result<String, String> {
    let g = Graph::from_json(graph_json).map_err(|e| e.to_string())?;
    let e = navrel::expr::parse_in(expr, g.labels()).map_err(|e| e.to_string())?;
    let r = eval_on(&e, &g).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&g.pairs_named(&r)).expect("pairs serialize"))
}

/// The rewrite report for `pipeline`, certified on its default bound.
pub fn rewrite_json(expr: &str, pipeline: &str) -> Result<String, String> {
    let p: Pipeline = pipeline.parse()?;
    let e = parse(expr).map_err(|e| e.to_string())?;
    let report = run_pipeline(&e, p, Some(default_certificate_config(p))).map_err(|e| e.to_string())?;
    Ok(report.to_json())
}

pub fn automaton_dot(expr: &str) -> Result<String, String> {
    let e = parse(expr).map_err(|e| e.to_string())?;
    Ok(expr_to_automaton(&e).map_err(|e| e.to_string())?.to_dot())
}

#[wasm_bindgen]
pub fn evaluate(expr: &str, graph_json: &str) -> Result<String, JsValue> {
    evaluate_json(expr, graph_json).map_err(JsValue::from)
}

#[wasm_bindgen]
pub fn rewrite(expr: &str, pipeline: &str) -> Result<String, JsValue> {
    rewrite_json(expr, pipeline).map_err(JsValue::from)
}

#[wasm_bindgen]
pub fn to_automaton_dot(expr: &str) -> Result<String, JsValue> {
    automaton_dot(expr).map_err(JsValue::from)
}
