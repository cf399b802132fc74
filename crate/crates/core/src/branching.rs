//! Bounded search tree solvers.
//!
//! All three share the same skeleton: take the free (cost-0) vertices, then
//! at every node settle the trivial cases, compute a small candidate set from
//! the *residual* weighted degrees that some feasible solution must hit, and
//! branch on each candidate in increasing id order. Depth and fan-out bounds
//! are checked at every node and reported as internal errors if broken.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use num_traits::{ToPrimitive, Zero};

use crate::error::{internal, SolveError};
use crate::graph::{bipartition, bipartition_within, Graph, Side, VertexId, Weight};
use crate::instance::{CoverSolution, SolveReport, WpvcInstance};
use crate::search::{SearchState, SearchStats};

type Found = Result<Option<Vec<VertexId>>, SolveError>;

fn weight(x: usize) -> Weight {
    Weight::from(x)
}

fn finish(
    inst: &WpvcInstance,
    found: Option<Vec<VertexId>>,
    stats: SearchStats,
    started: Instant,
) -> Result<SolveReport, SolveError> {
    let mut report = match found {
        Some(vertices) => {
            let sol = CoverSolution::integral(&inst.graph, vertices);
            if !inst.accepts(&sol) {
                return Err(internal(format!(
                    "witness {:?} has cost {} and profit {}",
                    sol.integral, sol.cost, sol.profit
                )));
            }
            SolveReport::yes(sol)
        }
        None => SolveReport::no(),
    };
    report.nodes_expanded = stats.nodes_expanded;
    report.max_depth = stats.max_depth;
    report.max_fanout = stats.max_fanout;
    report.wall_time = started.elapsed();
    Ok(report)
}

// ---------------------------------------------------------------------------
// Unit costs, bipartite graph, parameter R.

/// Decides a unit-cost instance on a bipartite graph, branching on the
/// vertices whose weighted degree is at least `L/R`.
pub fn solve_epvcbd(inst: &WpvcInstance) -> Result<SolveReport, SolveError> {
    let started = Instant::now();
    let (found, stats) = epvcbd_search(&inst.graph, &inst.budget, &inst.threshold)?;
    finish(inst, found, stats, started)
}

/// The search behind [`solve_epvcbd`], also used by the matching-constrained
/// and fractional solvers.
pub(crate) fn epvcbd_search(
    graph: &Graph,
    budget: &Weight,
    threshold: &Weight,
) -> Result<(Option<Vec<VertexId>>, SearchStats), SolveError> {
    if !graph.all_unit_costs() {
        return Err(SolveError::Variant("the unit-cost solver needs every vertex cost to be 1".into()));
    }
    bipartition(graph)?;
    let mut search = Epvcbd {
        st: SearchState::from_parts(graph, budget.clone(), threshold.clone()),
        stats: SearchStats::default(),
        root_budget: budget.clone(),
    };
    let found = search.node(0)?;
    Ok((found, search.stats))
}

struct Epvcbd<'a> {
    st: SearchState<'a>,
    stats: SearchStats,
    root_budget: Weight,
}

impl Epvcbd<'_> {
    fn node(&mut self, depth: usize) -> Found {
        self.stats.enter(depth);
        if weight(depth) > self.root_budget {
            return Err(internal(format!("depth {depth} exceeds R = {}", self.root_budget)));
        }
        match self.st.base_case() {
            Some(true) => return Ok(Some(self.st.chosen.clone())),
            Some(false) => return Ok(None),
            None => {}
        }
        let r = self.st.budget.clone();
        // p(∂v) >= L/R, cross-multiplied.
        let heavy: Vec<VertexId> = self
            .st
            .alive_vertices()
            .filter(|&v| self.st.wdeg(v) * &r >= self.st.need)
            .collect();
        if heavy.is_empty() {
            // Every vertex covers less than L/R, so R of them cover less than L.
            return Ok(None);
        }
        if weight(heavy.len()) >= &r * 2u32 {
            return self.independent_shortcut(&heavy, &r).map(Some);
        }
        self.stats.branch(heavy.len());
        for v in heavy {
            self.st.take(v);
            let found = self.node(depth + 1);
            self.st.undo();
            if let Some(sol) = found? {
                return Ok(Some(sol));
            }
        }
        Ok(None)
    }

    /// At least `2R` heavy vertices: the larger side of the subgraph they
    /// induce is independent and holds `R` of them, whose coverages add up.
    fn independent_shortcut(&mut self, heavy: &[VertexId], r: &Weight) -> Result<Vec<VertexId>, SolveError> {
        let g = self.st.graph;
        let mut keep = vec![false; g.n()];
        for &v in heavy {
            keep[v] = true;
        }
        let sides = bipartition_within(g, &keep)?;
        let (left, right): (Vec<VertexId>, Vec<VertexId>) =
            heavy.iter().partition(|&&v| sides[v] == Some(Side::Left));
        let larger = if left.len() >= right.len() { left } else { right };
        let take = r.to_usize().filter(|&t| t <= larger.len()).ok_or_else(|| {
            internal(format!("larger side has {} vertices, fewer than R = {r}", larger.len()))
        })?;
        let picked = &larger[..take];
        for (i, &a) in picked.iter().enumerate() {
            for &b in &picked[i + 1..] {
                if g.edge_between(a, b).is_some() {
                    return Err(internal(format!("shortcut vertices {a} and {b} are adjacent")));
                }
            }
        }
        let covered: Weight = picked.iter().map(|&v| self.st.wdeg(v)).sum();
        if covered < self.st.need {
            return Err(internal(format!(
                "shortcut covers {covered}, below the residual threshold {}",
                self.st.need
            )));
        }
        self.stats.case1_hits += 1;
        let mut sol = self.st.chosen.clone();
        sol.extend_from_slice(picked);
        Ok(sol)
    }
}

// ---------------------------------------------------------------------------
// Arbitrary weights, degree at most d, parameter R.

/// Decides a weighted instance whose maximum degree is at most `d`.
///
/// Per cost class the vertex of largest residual coverage is kept; some
/// feasible solution meets those vertices or their neighbors.
pub fn solve_wpvc_bounded_degree(inst: &WpvcInstance, d: usize) -> Result<SolveReport, SolveError> {
    let started = Instant::now();
    let g = &inst.graph;
    if let Some(v) = g.vertices().find(|&v| g.degree(v) > d) {
        return Err(SolveError::DegreeExceeded { vertex: v, degree: g.degree(v), bound: d });
    }
    let mut search = BoundedDegree {
        st: SearchState::new(inst),
        stats: SearchStats::default(),
        root_budget: inst.budget.clone(),
        degree: d,
    };
    search.st.take_free_vertices();
    let found = search.node(0)?;
    let stats = search.stats;
    finish(inst, found, stats, started)
}

struct BoundedDegree<'a> {
    st: SearchState<'a>,
    stats: SearchStats,
    root_budget: Weight,
    degree: usize,
}

impl BoundedDegree<'_> {
    fn node(&mut self, depth: usize) -> Found {
        self.stats.enter(depth);
        if weight(depth) > self.root_budget {
            return Err(internal(format!("depth {depth} exceeds R = {}", self.root_budget)));
        }
        match self.st.base_case() {
            Some(true) => return Ok(Some(self.st.chosen.clone())),
            Some(false) => return Ok(None),
            None => {}
        }
        let mut best: BTreeMap<&Weight, VertexId> = BTreeMap::new();
        for v in self.st.alive_vertices().filter(|&v| self.st.selectable(v)) {
            let slot = best.entry(self.st.graph.cost(v)).or_insert(v);
            if self.st.wdeg(v) > self.st.wdeg(*slot) {
                *slot = v;
            }
        }
        if best.is_empty() {
            return Ok(None);
        }
        let mut candidates = BTreeSet::new();
        for &v in best.values() {
            candidates.insert(v);
            candidates.extend(self.st.alive_neighbors(v).map(|(u, _)| u).filter(|&u| self.st.selectable(u)));
        }
        let limit = weight(self.degree + 1) * &self.st.budget;
        if weight(candidates.len()) > limit {
            return Err(internal(format!("fan-out {} exceeds (d+1)R = {limit}", candidates.len())));
        }
        self.stats.branch(candidates.len());
        for v in candidates {
            self.st.take(v);
            let found = self.node(depth + 1);
            self.st.undo();
            if let Some(sol) = found? {
                return Ok(Some(sol));
            }
        }
        Ok(None)
    }
}

// ---------------------------------------------------------------------------
// Arbitrary weights and graphs, parameter L.

/// Decides a weighted instance on any graph with a search tree bounded in
/// terms of the threshold `L`.
///
/// Per residual coverage value the cheapest vertex is kept; some feasible
/// solution meets those vertices or their neighbors. Zero-profit edges and
/// vertices of zero residual coverage play no part in the candidate set.
pub fn solve_wpvc_by_l(inst: &WpvcInstance) -> Result<SolveReport, SolveError> {
    let started = Instant::now();
    let mut search = ByThreshold {
        st: SearchState::new(inst),
        stats: SearchStats::default(),
        depth_limit: &inst.threshold * 2u32,
    };
    search.st.take_free_vertices();
    let found = search.node(0)?;
    let stats = search.stats;
    finish(inst, found, stats, started)
}

struct ByThreshold<'a> {
    st: SearchState<'a>,
    stats: SearchStats,
    depth_limit: Weight,
}

impl ByThreshold<'_> {
    fn node(&mut self, depth: usize) -> Found {
        self.stats.enter(depth);
        if depth > 0 && weight(depth) >= self.depth_limit {
            return Err(internal(format!("depth {depth} reaches 2L = {}", self.depth_limit)));
        }
        match self.st.base_case() {
            Some(true) => return Ok(Some(self.st.chosen.clone())),
            Some(false) => return Ok(None),
            None => {}
        }
        let useful: Vec<VertexId> = self
            .st
            .alive_vertices()
            .filter(|&v| self.st.selectable(v) && !self.st.wdeg(v).is_zero())
            .collect();
        if let Some(&v) = useful.iter().find(|&&v| *self.st.wdeg(v) >= self.st.need) {
            let mut sol = self.st.chosen.clone();
            sol.push(v);
            return Ok(Some(sol));
        }
        let mut cheapest: BTreeMap<&Weight, VertexId> = BTreeMap::new();
        for &v in &useful {
            let slot = cheapest.entry(self.st.wdeg(v)).or_insert(v);
            if self.st.graph.cost(v) < self.st.graph.cost(*slot) {
                *slot = v;
            }
        }
        if cheapest.is_empty() {
            return Ok(None);
        }
        let mut candidates = BTreeSet::new();
        for &v in cheapest.values() {
            candidates.insert(v);
            candidates.extend(
                self.st
                    .alive_neighbors(v)
                    .filter(|(u, p)| !p.is_zero() && self.st.selectable(*u))
                    .map(|(u, _)| u),
            );
        }
        let limit = &self.st.need * &self.st.need;
        if weight(candidates.len()) >= limit {
            return Err(internal(format!("fan-out {} reaches L^2 = {limit}", candidates.len())));
        }
        self.stats.branch(candidates.len());
        for v in candidates {
            self.st.take(v);
            let found = self.node(depth + 1);
            self.st.undo();
            if let Some(sol) = found? {
                return Ok(Some(sol));
            }
        }
        Ok(None)
    }
}
