//! Undirected simple graphs with vertex costs and edge profits, plus the
//! bipartite machinery (2-coloring, Hopcroft–Karp, König covers) the solvers
//! build on.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_bigint::BigUint;
use thiserror::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

/// Exact non-negative weight. Gadget instances produce values such as
/// `5^(2k)` that do not fit in machine words for moderate `k`.
pub type Weight = BigUint;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(VertexId, VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub profit: Weight,
}

impl Edge {
    /// The endpoint opposite to `x`.
    #[inline]
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }

    #[inline]
    pub fn key(&self) -> (VertexId, VertexId) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

/// An immutable undirected simple graph. Vertex ids are dense (`0..n`), edge
/// ids follow insertion order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    costs: Vec<Weight>,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<EdgeId>>,
    index: HashMap<(VertexId, VertexId), EdgeId>,
}

impl Graph {
    pub fn from_edges<I>(costs: Vec<Weight>, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId, Weight)>,
    {
        let n = costs.len();
        let mut g = Graph {
            costs,
            edges: Vec::new(),
            adjacency: vec![Vec::new(); n],
            index: HashMap::new(),
        };
        for (u, v, profit) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if g.index.contains_key(&key) {
                return Err(GraphError::ParallelEdge(key.0, key.1));
            }
            let id = g.edges.len();
            g.index.insert(key, id);
            g.edges.push(Edge { u, v, profit });
            g.adjacency[u].push(id);
            g.adjacency[v].push(id);
        }
        Ok(g)
    }

    /// Unit costs and unit profits.
    pub fn unit(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        Self::from_edges(
            vec![Weight::from(1u32); n],
            edges.iter().map(|&(u, v)| (u, v, Weight::from(1u32))),
        )
    }

    /// Small-integer convenience constructor, mostly for tests.
    pub fn weighted(costs: &[u64], edges: &[(VertexId, VertexId, u64)]) -> Result<Self, GraphError> {
        Self::from_edges(
            costs.iter().map(|&c| Weight::from(c)).collect(),
            edges.iter().map(|&(u, v, p)| (u, v, Weight::from(p))),
        )
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.costs.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n()
    }

    #[inline]
    pub fn cost(&self, v: VertexId) -> &Weight {
        &self.costs[v]
    }

    pub fn costs(&self) -> &[Weight] {
        &self.costs
    }

    #[inline]
    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    #[inline]
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        &self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adjacency[v].iter().map(move |&e| self.edges[e].other(v))
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn total_profit(&self) -> Weight {
        self.edges.iter().map(|e| &e.profit).sum()
    }

    fn check(&self, v: VertexId) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange(v))
        }
    }

    /// Total profit of the edges incident to `v`.
    pub fn weighted_degree(&self, v: VertexId) -> Result<Weight, GraphError> {
        self.check(v)?;
        Ok(self.weighted_degree_unchecked(v))
    }

    pub(crate) fn weighted_degree_unchecked(&self, v: VertexId) -> Weight {
        self.adjacency[v].iter().map(|&e| &self.edges[e].profit).sum()
    }

    /// Edges with at least one endpoint in `s`, and their total profit with
    /// every edge counted once.
    pub fn coverage(&self, s: &[VertexId]) -> Result<Coverage, GraphError> {
        let mut edges = BTreeSet::new();
        for &v in s {
            self.check(v)?;
            edges.extend(self.adjacency[v].iter().copied());
        }
        let profit = edges.iter().map(|&e| &self.edges[e].profit).sum();
        Ok(Coverage { edges, profit })
    }

    pub fn all_unit_costs(&self) -> bool {
        let one = Weight::from(1u32);
        self.costs.iter().all(|c| *c == one)
    }

    pub fn all_unit_profits(&self) -> bool {
        let one = Weight::from(1u32);
        self.edges.iter().all(|e| e.profit == one)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coverage {
    pub edges: BTreeSet<EdgeId>,
    pub profit: Weight,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bipartition {
    side: Vec<Side>,
}

impl Bipartition {
    pub fn from_sides(side: Vec<Side>) -> Self {
        Bipartition { side }
    }

    #[inline]
    pub fn side(&self, v: VertexId) -> Side {
        self.side[v]
    }

    pub fn sides(&self) -> &[Side] {
        &self.side
    }

    pub fn part(&self, s: Side) -> Vec<VertexId> {
        (0..self.side.len()).filter(|&v| self.side[v] == s).collect()
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.side.len() == g.n() && g.edges().iter().all(|e| self.side[e.u] != self.side[e.v])
    }
}

/// An odd cycle, listed as consecutive vertices (the last is adjacent to the
/// first).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph is not bipartite (odd cycle {cycle:?})")]
pub struct NotBipartite {
    pub cycle: Vec<VertexId>,
}

/// Breadth-first 2-coloring. Components are rooted at their lowest vertex,
/// which is placed on the left.
pub fn bipartition(g: &Graph) -> Result<Bipartition, NotBipartite> {
    let keep = vec![true; g.n()];
    let side = bipartition_within(g, &keep)?;
    Ok(Bipartition {
        side: side.into_iter().map(|s| s.unwrap_or(Side::Left)).collect(),
    })
}

/// 2-coloring of the subgraph induced by the vertices with `keep[v]` set.
/// Vertices outside the subgraph get `None`.
pub fn bipartition_within(g: &Graph, keep: &[bool]) -> Result<Vec<Option<Side>>, NotBipartite> {
    let n = g.n();
    let mut side: Vec<Option<Side>> = vec![None; n];
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        if !keep[root] || side[root].is_some() {
            continue;
        }
        side[root] = Some(Side::Left);
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            let sx = side[x].unwrap();
            for &e in g.incident(x) {
                let y = g.edge(e).other(x);
                if !keep[y] {
                    continue;
                }
                match side[y] {
                    None => {
                        side[y] = Some(sx.flip());
                        parent[y] = Some(x);
                        queue.push_back(y);
                    }
                    Some(sy) if sy == sx => {
                        return Err(NotBipartite {
                            cycle: odd_cycle(&parent, x, y),
                        });
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(side)
}

/// Closes the BFS-tree paths from `x` and `y` (same layer parity, adjacent)
/// into a cycle through their lowest common ancestor.
fn odd_cycle(parent: &[Option<VertexId>], x: VertexId, y: VertexId) -> Vec<VertexId> {
    let path = |mut v: VertexId| {
        let mut p = vec![v];
        while let Some(u) = parent[v] {
            p.push(u);
            v = u;
        }
        p
    };
    let px = path(x);
    let py = path(y);
    let on_py: BTreeSet<VertexId> = py.iter().copied().collect();
    let (ix, lca) = px
        .iter()
        .enumerate()
        .find(|(_, v)| on_py.contains(v))
        .map(|(i, &v)| (i, v))
        .expect("BFS paths share their root");
    let iy = py.iter().position(|&v| v == lca).unwrap();
    let mut cycle: Vec<VertexId> = px[..=ix].to_vec();
    cycle.extend(py[..iy].iter().rev());
    cycle
}

/// A set of pairwise disjoint edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Matching {
    pub edges: BTreeSet<EdgeId>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn is_valid_for(&self, g: &Graph) -> bool {
        let mut used = vec![false; g.n()];
        for &e in &self.edges {
            if e >= g.m() {
                return false;
            }
            let edge = g.edge(e);
            if used[edge.u] || used[edge.v] {
                return false;
            }
            used[edge.u] = true;
            used[edge.v] = true;
        }
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexCoverSet {
    pub vertices: BTreeSet<VertexId>,
}

impl VertexCoverSet {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    /// Whether every edge in `edges` has an endpoint in the set.
    pub fn covers<'a>(&self, g: &Graph, mut edges: impl Iterator<Item = &'a EdgeId>) -> bool {
        edges.all(|&e| {
            let edge = g.edge(e);
            self.vertices.contains(&edge.u) || self.vertices.contains(&edge.v)
        })
    }
}

/// Maximum matching of the whole graph.
pub fn max_matching(g: &Graph, bp: &Bipartition) -> Matching {
    let mut m = BipartiteMatcher::new(g, bp, 0..g.m());
    m.hopcroft_karp();
    m.matching()
}

/// König cover built from a maximum matching `m` of `g`. The result has
/// exactly `m.size()` vertices when `m` is maximum; that precondition is not
/// checked.
pub fn min_vertex_cover(g: &Graph, bp: &Bipartition, m: &Matching) -> VertexCoverSet {
    let mut matcher = BipartiteMatcher::new(g, bp, 0..g.m());
    matcher.load(m);
    matcher.min_vertex_cover()
}

/// Matching state over a growing edge subset of a bipartite graph.
///
/// Left vertices keep their neighbor lists sorted by right-vertex id, and all
/// searches start from free left vertices in increasing id order, so results
/// only depend on the input.
#[derive(Debug, Clone)]
pub struct BipartiteMatcher<'g> {
    graph: &'g Graph,
    side: &'g Bipartition,
    adj: Vec<Vec<(VertexId, EdgeId)>>,
    present: Vec<bool>,
    mate: Vec<Option<EdgeId>>,
    size: usize,
}

impl<'g> BipartiteMatcher<'g> {
    pub fn new(graph: &'g Graph, side: &'g Bipartition, edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut m = BipartiteMatcher {
            graph,
            side,
            adj: vec![Vec::new(); graph.n()],
            present: vec![false; graph.m()],
            mate: vec![None; graph.n()],
            size: 0,
        };
        for e in edges {
            m.add_edge(e);
        }
        m
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.present[e]
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.graph.m()).filter(move |&e| self.present[e])
    }

    fn left_of(&self, e: EdgeId) -> (VertexId, VertexId) {
        let edge = self.graph.edge(e);
        if self.side.side(edge.u) == Side::Left {
            (edge.u, edge.v)
        } else {
            (edge.v, edge.u)
        }
    }

    /// Adds `e` to the subgraph; the current matching is kept.
    pub fn add_edge(&mut self, e: EdgeId) {
        if self.present[e] {
            return;
        }
        self.present[e] = true;
        let (l, r) = self.left_of(e);
        let list = &mut self.adj[l];
        let pos = list.partition_point(|&(x, _)| x < r);
        list.insert(pos, (r, e));
    }

    fn load(&mut self, m: &Matching) {
        for &e in &m.edges {
            let edge = self.graph.edge(e);
            self.mate[edge.u] = Some(e);
            self.mate[edge.v] = Some(e);
        }
        self.size = m.size();
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn matching(&self) -> Matching {
        let edges = (0..self.graph.n())
            .filter(|&v| self.side.side(v) == Side::Left)
            .filter_map(|v| self.mate[v])
            .collect();
        Matching { edges }
    }

    fn mate_vertex(&self, v: VertexId) -> Option<VertexId> {
        self.mate[v].map(|e| self.graph.edge(e).other(v))
    }

    fn free_lefts(&self) -> Vec<VertexId> {
        (0..self.graph.n())
            .filter(|&v| self.side.side(v) == Side::Left && self.mate[v].is_none() && !self.adj[v].is_empty())
            .collect()
    }

    /// Runs Hopcroft–Karp phases until no augmenting path remains.
    pub fn hopcroft_karp(&mut self) {
        let n = self.graph.n();
        loop {
            // BFS layering from all free left vertices.
            let mut dist = vec![usize::MAX; n];
            let mut queue = VecDeque::new();
            for v in self.free_lefts() {
                dist[v] = 0;
                queue.push_back(v);
            }
            let mut found = false;
            while let Some(l) = queue.pop_front() {
                for &(r, _) in &self.adj[l] {
                    match self.mate_vertex(r) {
                        None => found = true,
                        Some(l2) if dist[l2] == usize::MAX => {
                            dist[l2] = dist[l] + 1;
                            queue.push_back(l2);
                        }
                        Some(_) => {}
                    }
                }
            }
            if !found {
                return;
            }
            let mut next = vec![0usize; n];
            let mut augmented = false;
            for l in self.free_lefts() {
                if self.layered_dfs(l, &mut dist, &mut next) {
                    self.size += 1;
                    augmented = true;
                }
            }
            if !augmented {
                return;
            }
        }
    }

    fn layered_dfs(&mut self, l: VertexId, dist: &mut [usize], next: &mut [usize]) -> bool {
        while next[l] < self.adj[l].len() {
            let (r, e) = self.adj[l][next[l]];
            next[l] += 1;
            let ok = match self.mate_vertex(r) {
                None => true,
                Some(l2) => dist[l2] == dist[l] + 1 && self.layered_dfs(l2, dist, next),
            };
            if ok {
                self.mate[l] = Some(e);
                self.mate[r] = Some(e);
                return true;
            }
        }
        dist[l] = usize::MAX;
        false
    }

    /// Searches for a single augmenting path and applies it. Returns whether
    /// the matching grew.
    pub fn augment_once(&mut self) -> bool {
        let mut seen = vec![false; self.graph.n()];
        for l in self.free_lefts() {
            if self.simple_dfs(l, &mut seen) {
                self.size += 1;
                return true;
            }
        }
        false
    }

    fn simple_dfs(&mut self, l: VertexId, seen: &mut [bool]) -> bool {
        for i in 0..self.adj[l].len() {
            let (r, e) = self.adj[l][i];
            if seen[r] {
                continue;
            }
            seen[r] = true;
            let ok = match self.mate_vertex(r) {
                None => true,
                Some(l2) => self.simple_dfs(l2, seen),
            };
            if ok {
                self.mate[l] = Some(e);
                self.mate[r] = Some(e);
                return true;
            }
        }
        false
    }

    /// König construction: with `Z` the vertices reachable from free left
    /// vertices by alternating paths, the cover is `(Left \ Z) ∪ (Right ∩ Z)`.
    pub fn min_vertex_cover(&self) -> VertexCoverSet {
        let n = self.graph.n();
        let mut reached = vec![false; n];
        let mut queue = VecDeque::new();
        for v in 0..n {
            if self.side.side(v) == Side::Left && self.mate[v].is_none() {
                reached[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(l) = queue.pop_front() {
            for &(r, e) in &self.adj[l] {
                if reached[r] || self.mate[l] == Some(e) {
                    continue;
                }
                reached[r] = true;
                if let Some(l2) = self.mate_vertex(r) {
                    if !reached[l2] {
                        reached[l2] = true;
                        queue.push_back(l2);
                    }
                }
            }
        }
        let vertices = (0..n)
            .filter(|&v| match self.side.side(v) {
                Side::Left => !reached[v] && self.mate[v].is_some(),
                Side::Right => reached[v],
            })
            .collect();
        VertexCoverSet { vertices }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(x: u64) -> Weight {
        Weight::from(x)
    }

    fn path3() -> Graph {
        Graph::unit(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::unit(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap()
    }

    fn star3() -> Graph {
        Graph::weighted(&[1, 1, 1, 1], &[(0, 1, 1), (0, 2, 2), (0, 3, 3)]).unwrap()
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        assert_eq!(Graph::unit(2, &[(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(Graph::unit(2, &[(0, 1), (1, 0)]), Err(GraphError::ParallelEdge(0, 1)));
        assert_eq!(Graph::unit(2, &[(0, 2)]), Err(GraphError::VertexOutOfRange(2)));
    }

    #[test]
    fn adjacency_lists_hold_each_edge_twice() {
        let g = c4();
        for (id, e) in g.edges().iter().enumerate() {
            let holders: Vec<_> = g.vertices().filter(|&v| g.incident(v).contains(&id)).collect();
            assert_eq!(holders, {
                let mut h = vec![e.u, e.v];
                h.sort();
                h
            });
        }
    }

    #[test]
    fn weighted_degree_examples() {
        let isolated = Graph::unit(1, &[]).unwrap();
        assert_eq!(isolated.weighted_degree(0).unwrap(), w(0));
        assert_eq!(path3().weighted_degree(1).unwrap(), w(2));
        assert_eq!(star3().weighted_degree(0).unwrap(), w(6));
        assert_eq!(path3().weighted_degree(3), Err(GraphError::VertexOutOfRange(3)));
    }

    #[test]
    fn coverage_counts_each_edge_once() {
        let g = path3();
        let empty = g.coverage(&[]).unwrap();
        assert!(empty.edges.is_empty());
        assert_eq!(empty.profit, w(0));
        let mid = g.coverage(&[1]).unwrap();
        assert_eq!(mid.edges, BTreeSet::from([0, 1]));
        assert_eq!(mid.profit, w(2));
        let ab = g.coverage(&[0, 1]).unwrap();
        assert_eq!(ab.edges, BTreeSet::from([0, 1]));
        assert_eq!(ab.profit, w(2));
    }

    #[test]
    fn bipartition_examples() {
        let edge = Graph::unit(2, &[(0, 1)]).unwrap();
        let bp = bipartition(&edge).unwrap();
        assert_eq!(bp.part(Side::Left), vec![0]);
        assert_eq!(bp.part(Side::Right), vec![1]);

        let tri = Graph::unit(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let err = bipartition(&tri).unwrap_err();
        assert_eq!(err.cycle.len(), 3);
        let mut c = err.cycle.clone();
        c.sort();
        assert_eq!(c, vec![0, 1, 2]);

        let bp = bipartition(&c4()).unwrap();
        assert_eq!(bp.part(Side::Left), vec![0, 2]);
        assert_eq!(bp.part(Side::Right), vec![1, 3]);
    }

    #[test]
    fn odd_cycle_witness_is_a_real_cycle() {
        // C5 with a pendant path hanging off it.
        let g = Graph::unit(7, &[(5, 6), (6, 0), (0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let cyc = bipartition(&g).unwrap_err().cycle;
        assert_eq!(cyc.len() % 2, 1);
        for i in 0..cyc.len() {
            let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
            assert!(g.edge_between(a, b).is_some(), "{a}-{b} missing in {cyc:?}");
        }
    }

    #[test]
    fn matching_examples() {
        let empty = Graph::unit(3, &[]).unwrap();
        let bp = bipartition(&empty).unwrap();
        assert_eq!(max_matching(&empty, &bp).size(), 0);
        assert!(min_vertex_cover(&empty, &bp, &Matching::default()).vertices.is_empty());

        let g = c4();
        let bp = bipartition(&g).unwrap();
        let m = max_matching(&g, &bp);
        assert_eq!(m.size(), 2);
        assert!(m.is_valid_for(&g));
        let cover = min_vertex_cover(&g, &bp, &m);
        assert_eq!(cover.size(), 2);
        assert!(cover.covers(&g, (0..g.m()).collect::<Vec<_>>().iter()));

        let s = star3();
        let bp = bipartition(&s).unwrap();
        let m = max_matching(&s, &bp);
        assert_eq!(m.size(), 1);
        assert_eq!(min_vertex_cover(&s, &bp, &m).vertices, BTreeSet::from([0]));
    }

    #[test]
    fn augment_once_grows_by_at_most_one() {
        let g = Graph::unit(6, &[(0, 1), (2, 3), (4, 5), (0, 3)]).unwrap();
        let bp = bipartition(&g).unwrap();
        let mut m = BipartiteMatcher::new(&g, &bp, []);
        for e in 0..g.m() {
            m.add_edge(e);
            let before = m.size();
            m.augment_once();
            assert!(m.size() <= before + 1);
            assert!(!m.augment_once());
        }
        assert_eq!(m.size(), 3);
    }
}
