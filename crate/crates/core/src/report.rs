//! Text and JSON renderings of a [`SolveReport`].
//!
//! Text form, one `key=value` per line:
//!
//! ```text
//! verdict=yes
//! witness=b,d
//! fractional=c:1/2
//! cost=5/2
//! profit=7
//! matching=a-b,c-d
//! nodes_expanded=12
//! max_depth=2
//! max_fanout=3
//! wall_time_us=41
//! ```
//!
//! `fractional` and `matching` only appear when present; `witness`, `cost`
//! and `profit` only on yes. The JSON form is a single object with the same
//! keys; `witness` and `matching` become arrays and `fractional` an object
//! `{"vertex": ..., "extent": "1/2"}`. `wall_time_us` is the only field that
//! varies between runs.

use serde_json::{json, Map, Value};

use crate::graph::{Graph, VertexId};
use crate::instance::SolveReport;

fn label(labels: Option<&[String]>, v: VertexId) -> String {
    labels.and_then(|l| l.get(v).cloned()).unwrap_or_else(|| (v + 1).to_string())
}

fn fields(report: &SolveReport, g: &Graph, labels: Option<&[String]>) -> Vec<(&'static str, Value)> {
    let mut out = vec![("verdict", Value::from(report.verdict.to_string()))];
    if let Some(w) = &report.witness {
        let ids: Vec<Value> = w.integral.iter().map(|&v| Value::from(label(labels, v))).collect();
        out.push(("witness", Value::Array(ids)));
        if let Some((v, extent)) = &w.fractional {
            out.push(("fractional", json!({ "vertex": label(labels, *v), "extent": extent.to_string() })));
        }
        out.push(("cost", Value::from(w.cost.to_string())));
        out.push(("profit", Value::from(w.profit.to_string())));
    }
    if let Some(m) = &report.matching {
        let edges: Vec<Value> = m
            .edges
            .iter()
            .map(|&e| {
                let edge = g.edge(e);
                Value::from(format!("{}-{}", label(labels, edge.u), label(labels, edge.v)))
            })
            .collect();
        out.push(("matching", Value::Array(edges)));
    }
    out.push(("nodes_expanded", Value::from(report.nodes_expanded)));
    out.push(("max_depth", Value::from(report.max_depth)));
    out.push(("max_fanout", Value::from(report.max_fanout)));
    out.push(("wall_time_us", Value::from(report.wall_time.as_micros() as u64)));
    out
}

pub fn render_text(report: &SolveReport, g: &Graph, labels: Option<&[String]>) -> String {
    let mut out = String::new();
    for (key, value) in fields(report, g, labels) {
        let text = match value {
            Value::String(s) => s,
            Value::Array(items) => items.iter().filter_map(Value::as_str).collect::<Vec<_>>().join(","),
            Value::Object(o) => format!(
                "{}:{}",
                o["vertex"].as_str().unwrap_or_default(),
                o["extent"].as_str().unwrap_or_default()
            ),
            other => other.to_string(),
        };
        out.push_str(key);
        out.push('=');
        out.push_str(&text);
        out.push('\n');
    }
    out
}

pub fn render_json(report: &SolveReport, g: &Graph, labels: Option<&[String]>) -> String {
    let map: Map<String, Value> = fields(report, g, labels).into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    Value::Object(map).to_string()
}
