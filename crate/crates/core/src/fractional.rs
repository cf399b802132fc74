//! Fractional variant: at most one vertex may be taken to an extent in
//! `(0, 1)`, paying and covering proportionally.
//!
//! A vertex of cost `c` is split into `c` unit-cost sections, and an edge
//! `vu` into `c(v)·c(u)` copies of profit `p(vu)/(c(v)c(u))`, scaled to
//! integers by a common denominator `D`. The unit-cost solver decides the
//! expanded instance; section counts then give extents, which are pushed
//! pairwise to the boundary until at most one stays fractional.

use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::branching::epvcbd_search;
use crate::error::{internal, SolveError};
use crate::graph::{bipartition, Graph, VertexId, Weight};
use crate::instance::{CoverSolution, SolveReport, WpvcInstance};

/// Upper bound on expanded vertices plus edges.
pub const EXPANSION_LIMIT: usize = 20_000_000;

/// Section vertices of every original vertex, and the reverse map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionMap {
    starts: Vec<usize>,
    owner: Vec<VertexId>,
}

impl SectionMap {
    pub fn section(&self, v: VertexId) -> std::ops::Range<VertexId> {
        self.starts[v]..self.starts[v + 1]
    }

    pub fn owner(&self, s: VertexId) -> VertexId {
        self.owner[s]
    }

    pub fn original_n(&self) -> usize {
        self.starts.len() - 1
    }

    pub fn expanded_n(&self) -> usize {
        self.owner.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expansion {
    pub instance: WpvcInstance,
    pub map: SectionMap,
    /// Common denominator `D` of the per-copy profits.
    pub scale: Weight,
}

fn section_count(c: &Weight) -> Result<usize, SolveError> {
    c.to_usize()
        .filter(|&k| k <= EXPANSION_LIMIT)
        .ok_or_else(|| SolveError::Input(format!("cost {c} is too large to split into sections")))
}

/// Common denominator: lcm of `c(v)·c(u)` over all edges, 1 without edges.
pub fn scale_of(g: &Graph) -> Weight {
    g.edges()
        .iter()
        .fold(Weight::one(), |d, e| d.lcm(&(g.cost(e.u) * g.cost(e.v))))
}

pub fn expand(inst: &WpvcInstance) -> Result<Expansion, SolveError> {
    let g = &inst.graph;
    bipartition(g)?;
    if let Some(v) = g.vertices().find(|&v| g.cost(v).is_zero()) {
        return Err(SolveError::Input(format!("vertex {v} has cost 0 and has no sections")));
    }
    let mut starts = vec![0usize];
    let mut owner = Vec::new();
    let mut size = 0usize;
    for v in g.vertices() {
        let k = section_count(g.cost(v))?;
        size = size.saturating_add(k);
        owner.extend(std::iter::repeat_n(v, k));
        starts.push(owner.len());
    }
    for e in g.edges() {
        size = size.saturating_add(section_count(g.cost(e.u))?.saturating_mul(section_count(g.cost(e.v))?));
    }
    if size > EXPANSION_LIMIT {
        return Err(SolveError::Input(format!("expansion needs {size} vertices and edges, above {EXPANSION_LIMIT}")));
    }
    let map = SectionMap { starts, owner };
    let scale = scale_of(g);
    let mut edges = Vec::new();
    for e in g.edges() {
        let per_copy = &e.profit * &scale / (g.cost(e.u) * g.cost(e.v));
        for a in map.section(e.u) {
            for b in map.section(e.v) {
                edges.push((a, b, per_copy.clone()));
            }
        }
    }
    let graph = Graph::from_edges(vec![Weight::one(); map.expanded_n()], edges).map_err(|e| internal(e.to_string()))?;
    let mut instance = WpvcInstance::new(graph, inst.budget.clone(), &inst.threshold * &scale);
    instance.bipartite_required = inst.bipartite_required;
    Ok(Expansion { instance, map, scale })
}

/// One rebalancing move: a section unit goes from `from` to `to`. Profits
/// are scaled by `D` and include only the non-free part of the instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RebalanceStep {
    pub from: VertexId,
    pub to: VertexId,
    pub profit_before: Weight,
    pub profit_after: Weight,
}

/// Scaled profit of section counts `a`: every edge `vu` has
/// `c(v)c(u) - (c(v)-a(v))(c(u)-a(u))` of its copies covered.
fn scaled_profit(g: &Graph, scale: &Weight, a: &[Weight]) -> Weight {
    g.edges()
        .iter()
        .map(|e| {
            let (cu, cv) = (g.cost(e.u), g.cost(e.v));
            let all = cu * cv;
            let uncovered = (cu - &a[e.u]) * (cv - &a[e.v]);
            &e.profit * scale / &all * (all - uncovered)
        })
        .sum()
}

/// Marginal scaled coverage of one more section of `v`.
fn marginal(g: &Graph, scale: &Weight, a: &[Weight], v: VertexId) -> Weight {
    g.incident(v)
        .iter()
        .map(|&e| {
            let edge = g.edge(e);
            let u = edge.other(v);
            &edge.profit * scale / (g.cost(u) * g.cost(v)) * (g.cost(u) - &a[u])
        })
        .sum()
}

/// Moves section units between fractional vertices until at most one is
/// fractional. Along `a(x) + a(y) = const` the profit is convex, so one of the
/// two directions never loses profit; that direction is kept until one of the
/// pair is integral.
fn rebalance(g: &Graph, scale: &Weight, a: &mut [Weight]) -> Result<Vec<RebalanceStep>, SolveError> {
    let mut steps = Vec::new();
    loop {
        let mut frac: Vec<(Weight, VertexId)> = g
            .vertices()
            .filter(|&v| !a[v].is_zero() && a[v] < *g.cost(v))
            .map(|v| (marginal(g, scale, a, v), v))
            .collect();
        if frac.len() < 2 {
            return Ok(steps);
        }
        frac.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)));
        let (hi, lo) = (frac[0].1, frac[1].1);
        let before = scaled_profit(g, scale, a);
        let toward_hi = moved(g, scale, a, lo, hi);
        let (from, to) = if toward_hi >= before { (lo, hi) } else { (hi, lo) };
        while !a[from].is_zero() && a[to] < *g.cost(to) {
            let profit_before = scaled_profit(g, scale, a);
            a[from] -= 1u32;
            a[to] += 1u32;
            let profit_after = scaled_profit(g, scale, a);
            if profit_after < profit_before {
                return Err(internal(format!(
                    "moving a section from {from} to {to} lowered the profit from {profit_before} to {profit_after}"
                )));
            }
            steps.push(RebalanceStep { from, to, profit_before, profit_after });
        }
    }
}

fn moved(g: &Graph, scale: &Weight, a: &mut [Weight], from: VertexId, to: VertexId) -> Weight {
    a[from] -= 1u32;
    a[to] += 1u32;
    let p = scaled_profit(g, scale, a);
    a[from] += 1u32;
    a[to] -= 1u32;
    p
}

/// Decides the fractional variant on a bipartite graph.
pub fn solve_wpvcbfd(inst: &WpvcInstance) -> Result<SolveReport, SolveError> {
    solve_wpvcbfd_traced(inst).map(|(report, _)| report)
}

/// As [`solve_wpvcbfd`], also returning the rebalancing moves.
pub fn solve_wpvcbfd_traced(inst: &WpvcInstance) -> Result<(SolveReport, Vec<RebalanceStep>), SolveError> {
    let started = Instant::now();
    let g = &inst.graph;
    bipartition(g)?;
    let free: Vec<VertexId> = g.vertices().filter(|&v| g.cost(v).is_zero()).collect();
    let (res, kept) = inst.residual_many(&free).map_err(|e| internal(e.to_string()))?;
    let exp = expand(&res)?;
    let (found, stats) = epvcbd_search(&exp.instance.graph, &exp.instance.budget, &exp.instance.threshold)?;
    let Some(sections) = found else {
        let mut report = SolveReport::no();
        report.nodes_expanded = stats.nodes_expanded;
        report.max_depth = stats.max_depth;
        report.max_fanout = stats.max_fanout;
        report.wall_time = started.elapsed();
        return Ok((report, Vec::new()));
    };

    let rg = &res.graph;
    let mut a = vec![Weight::zero(); rg.n()];
    for s in sections {
        a[exp.map.owner(s)] += 1u32;
    }
    let steps = rebalance(rg, &exp.scale, &mut a)?;
    let final_profit = scaled_profit(rg, &exp.scale, &a);
    if final_profit < exp.instance.threshold {
        return Err(internal(format!(
            "rebalanced profit {final_profit} is below the scaled threshold {}",
            exp.instance.threshold
        )));
    }

    let mut integral = free;
    let mut fractional = None;
    for v in rg.vertices() {
        if a[v] == *rg.cost(v) {
            integral.push(kept[v]);
        } else if !a[v].is_zero() {
            let extent = BigRational::new(BigInt::from(a[v].clone()), BigInt::from(rg.cost(v).clone()));
            if fractional.replace((kept[v], extent)).is_some() {
                return Err(internal("more than one fractional vertex after rebalancing"));
            }
        }
    }
    let sol = CoverSolution::evaluate(g, integral, fractional);
    if !inst.accepts(&sol) {
        return Err(internal(format!("fractional witness has cost {} and profit {}", sol.cost, sol.profit)));
    }
    let mut report = SolveReport::yes(sol);
    report.nodes_expanded = stats.nodes_expanded;
    report.max_depth = stats.max_depth;
    report.max_fanout = stats.max_fanout;
    report.wall_time = started.elapsed();
    Ok((report, steps))
}
