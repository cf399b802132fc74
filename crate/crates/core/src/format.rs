//! Line-oriented text formats.
//!
//! Weighted instances:
//!
//! ```text
//! # comment
//! p wpvc <n> <m> <R> <L>
//! v <label> <cost>          (optional, cost defaults to 1)
//! e <label> <label> [profit] (profit defaults to 1)
//! ```
//!
//! Multi-colored clique instances:
//!
//! ```text
//! p mcq <n> <m> <k>
//! c <label> <color>         (color in 1..=k)
//! e <label> <label>
//! ```
//!
//! Labels are arbitrary tokens; dense ids are assigned in order of first
//! appearance. When fewer than `n` labels occur, the remaining vertices are
//! isolated and receive generated labels.

use std::collections::HashMap;
use std::fmt::Write as _;

use num_traits::One;
use thiserror::Error;

use crate::gadgets::McqInstance;
use crate::graph::{Graph, VertexId, Weight};
use crate::instance::{Variant, WpvcInstance};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing 'p {0}' header")]
    MissingHeader(&'static str),
    #[error("duplicate header")]
    DuplicateHeader,
    #[error("malformed header, expected '{0}'")]
    BadHeader(&'static str),
    #[error("unknown record '{0}'")]
    UnknownRecord(String),
    #[error("malformed '{0}' record")]
    BadRecord(&'static str),
    #[error("'{0}' is not a non-negative integer")]
    BadNumber(String),
    #[error("more than the declared {0} vertices")]
    TooManyVertices(usize),
    #[error("header declares {declared} edges, found {found}")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),
    #[error("self-loop at {0}")]
    SelfLoop(String),
    #[error("vertex {0} declared twice")]
    DuplicateVertex(String),
    #[error("color {color} of {label} is outside 1..={k}")]
    ColorOutOfRange { label: String, color: usize, k: usize },
    #[error("vertex {0} has no color")]
    MissingColor(String),
    #[error("{0}")]
    Invalid(String),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

/// A parsed weighted instance together with the original vertex labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedWpvc {
    pub instance: WpvcInstance,
    pub labels: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedMcq {
    pub instance: McqInstance,
    pub labels: Vec<String>,
}

#[derive(Default)]
struct Labels {
    ids: HashMap<String, VertexId>,
    names: Vec<String>,
    limit: usize,
}

impl Labels {
    fn id(&mut self, label: &str, line: usize) -> Result<VertexId, ParseError> {
        if let Some(&id) = self.ids.get(label) {
            return Ok(id);
        }
        if self.names.len() == self.limit {
            return Err(err(line, ParseErrorKind::TooManyVertices(self.limit)));
        }
        let id = self.names.len();
        self.ids.insert(label.to_string(), id);
        self.names.push(label.to_string());
        Ok(id)
    }

    fn finish(mut self) -> Vec<String> {
        let mut i = self.names.len();
        while self.names.len() < self.limit {
            let mut label = format!("_{}", i + 1);
            while self.ids.contains_key(&label) {
                label.insert(0, '_');
            }
            self.ids.insert(label.clone(), self.names.len());
            self.names.push(label);
            i += 1;
        }
        self.names
    }
}

fn number<T: std::str::FromStr>(tok: &str, line: usize) -> Result<T, ParseError> {
    tok.parse().map_err(|_| err(line, ParseErrorKind::BadNumber(tok.to_string())))
}

fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split_whitespace().collect()))
        }
    })
}

/// Parses the weighted format. The variant is inferred from the weights
/// unless `variant` overrides it.
pub fn parse_wpvc(text: &str, variant: Option<Variant>) -> Result<ParsedWpvc, ParseError> {
    const HEADER: &str = "p wpvc <n> <m> <R> <L>";
    let mut header: Option<(usize, usize, Weight, Weight)> = None;
    let mut labels = Labels::default();
    let mut costs: Vec<Option<Weight>> = Vec::new();
    let mut edges: Vec<(VertexId, VertexId, Weight)> = Vec::new();
    let mut seen: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    let mut last_line = 0;

    for (line, toks) in records(text) {
        last_line = line;
        match toks[0] {
            "p" => {
                if header.is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateHeader));
                }
                if toks.len() != 6 || toks[1] != "wpvc" {
                    return Err(err(line, ParseErrorKind::BadHeader(HEADER)));
                }
                let n: usize = number(toks[2], line)?;
                let m: usize = number(toks[3], line)?;
                header = Some((n, m, number(toks[4], line)?, number(toks[5], line)?));
                labels.limit = n;
                costs = vec![None; n];
            }
            _ if header.is_none() => return Err(err(line, ParseErrorKind::MissingHeader("wpvc"))),
            "v" => {
                if toks.len() != 3 {
                    return Err(err(line, ParseErrorKind::BadRecord("v <label> <cost>")));
                }
                let id = labels.id(toks[1], line)?;
                if costs[id].is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateVertex(toks[1].to_string())));
                }
                costs[id] = Some(number(toks[2], line)?);
            }
            "e" => {
                if toks.len() != 3 && toks.len() != 4 {
                    return Err(err(line, ParseErrorKind::BadRecord("e <label> <label> [profit]")));
                }
                let profit = match toks.get(3) {
                    Some(t) => number(t, line)?,
                    None => Weight::one(),
                };
                let (u, v) = (labels.id(toks[1], line)?, labels.id(toks[2], line)?);
                push_edge(&mut edges, &mut seen, (u, v, profit), toks[1], toks[2], line)?;
            }
            other => return Err(err(line, ParseErrorKind::UnknownRecord(other.to_string()))),
        }
    }

    let (_, m, budget, threshold) = header.ok_or_else(|| err(last_line.max(1), ParseErrorKind::MissingHeader("wpvc")))?;
    if edges.len() != m {
        return Err(err(last_line, ParseErrorKind::EdgeCountMismatch { declared: m, found: edges.len() }));
    }
    let graph = Graph::from_edges(costs.into_iter().map(|c| c.unwrap_or_else(Weight::one)).collect(), edges)
        .map_err(|e| err(last_line, ParseErrorKind::Invalid(e.to_string())))?;
    let mut instance = WpvcInstance::new(graph, budget, threshold);
    if let Some(v) = variant {
        instance.variant = v;
    }
    Ok(ParsedWpvc { instance, labels: labels.finish() })
}

fn push_edge<P>(
    edges: &mut Vec<(VertexId, VertexId, P)>,
    seen: &mut HashMap<(VertexId, VertexId), usize>,
    edge: (VertexId, VertexId, P),
    a: &str,
    b: &str,
    line: usize,
) -> Result<(), ParseError> {
    let (u, v, _) = edge;
    if u == v {
        return Err(err(line, ParseErrorKind::SelfLoop(a.to_string())));
    }
    if seen.insert((u.min(v), u.max(v)), line).is_some() {
        return Err(err(line, ParseErrorKind::DuplicateEdge(a.to_string(), b.to_string())));
    }
    edges.push(edge);
    Ok(())
}

pub fn parse_mcq(text: &str) -> Result<ParsedMcq, ParseError> {
    const HEADER: &str = "p mcq <n> <m> <k>";
    let mut header: Option<(usize, usize, usize)> = None;
    let mut labels = Labels::default();
    let mut colors: Vec<Option<usize>> = Vec::new();
    let mut edges: Vec<(VertexId, VertexId, ())> = Vec::new();
    let mut seen = HashMap::new();
    let mut last_line = 0;

    for (line, toks) in records(text) {
        last_line = line;
        match toks[0] {
            "p" => {
                if header.is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateHeader));
                }
                if toks.len() != 5 || toks[1] != "mcq" {
                    return Err(err(line, ParseErrorKind::BadHeader(HEADER)));
                }
                let n: usize = number(toks[2], line)?;
                header = Some((n, number(toks[3], line)?, number(toks[4], line)?));
                labels.limit = n;
                colors = vec![None; n];
            }
            _ if header.is_none() => return Err(err(line, ParseErrorKind::MissingHeader("mcq"))),
            "c" => {
                if toks.len() != 3 {
                    return Err(err(line, ParseErrorKind::BadRecord("c <label> <color>")));
                }
                let k = header.unwrap().2;
                let id = labels.id(toks[1], line)?;
                let color: usize = number(toks[2], line)?;
                if color == 0 || color > k {
                    return Err(err(
                        line,
                        ParseErrorKind::ColorOutOfRange { label: toks[1].to_string(), color, k },
                    ));
                }
                if colors[id].replace(color).is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateVertex(toks[1].to_string())));
                }
            }
            "e" => {
                if toks.len() != 3 {
                    return Err(err(line, ParseErrorKind::BadRecord("e <label> <label>")));
                }
                let (u, v) = (labels.id(toks[1], line)?, labels.id(toks[2], line)?);
                push_edge(&mut edges, &mut seen, (u, v, ()), toks[1], toks[2], line)?;
            }
            other => return Err(err(line, ParseErrorKind::UnknownRecord(other.to_string()))),
        }
    }

    let (_, m, k) = header.ok_or_else(|| err(last_line.max(1), ParseErrorKind::MissingHeader("mcq")))?;
    if edges.len() != m {
        return Err(err(last_line, ParseErrorKind::EdgeCountMismatch { declared: m, found: edges.len() }));
    }
    let names = labels.finish();
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| err(last_line, ParseErrorKind::MissingColor(names[i].clone()))))
        .collect::<Result<Vec<_>, _>>()?;
    let pairs: Vec<(VertexId, VertexId)> = edges.into_iter().map(|(u, v, _)| (u, v)).collect();
    let instance =
        McqInstance::new(k, colors, &pairs).map_err(|e| err(last_line, ParseErrorKind::Invalid(e.to_string())))?;
    Ok(ParsedMcq { instance, labels: names })
}

fn label(labels: Option<&[String]>, v: VertexId) -> String {
    match labels {
        Some(l) => l[v].clone(),
        None => (v + 1).to_string(),
    }
}

/// Writes an instance in the weighted format. Every vertex gets a `v` line
/// up front, so reading the file back reproduces the same ids. Without
/// `labels`, vertex `i` is written as `i + 1`.
pub fn write_wpvc(inst: &WpvcInstance, labels: Option<&[String]>, comments: &[String]) -> String {
    let g = &inst.graph;
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "# {c}");
    }
    let _ = writeln!(out, "p wpvc {} {} {} {}", g.n(), g.m(), inst.budget, inst.threshold);
    for v in g.vertices() {
        let _ = writeln!(out, "v {} {}", label(labels, v), g.cost(v));
    }
    for e in g.edges() {
        let _ = writeln!(out, "e {} {} {}", label(labels, e.u), label(labels, e.v), e.profit);
    }
    out
}

pub fn write_mcq(inst: &McqInstance, labels: Option<&[String]>) -> String {
    let g = inst.graph();
    let mut out = String::new();
    let _ = writeln!(out, "p mcq {} {} {}", g.n(), g.m(), inst.k());
    for v in g.vertices() {
        let _ = writeln!(out, "c {} {}", label(labels, v), inst.color(v));
    }
    for e in g.edges() {
        let _ = writeln!(out, "e {} {}", label(labels, e.u), label(labels, e.v));
    }
    out
}
