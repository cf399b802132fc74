//! Mutable residual view used by the branching solvers.
//!
//! Taking a vertex has the same effect as building the residual instance
//! (vertex and incident edges gone, budget reduced, threshold reduced and
//! clamped at zero) but is undone in place when the branch returns.

use num_traits::Zero;

use crate::graph::{Graph, VertexId, Weight};
use crate::instance::WpvcInstance;

struct Undo {
    vertex: VertexId,
    need: Weight,
    wdeg: Weight,
}

pub(crate) struct SearchState<'a> {
    pub graph: &'a Graph,
    alive: Vec<bool>,
    wdeg: Vec<Weight>,
    /// Total profit of edges with both endpoints alive.
    total: Weight,
    pub budget: Weight,
    pub need: Weight,
    pub chosen: Vec<VertexId>,
    trail: Vec<Undo>,
}

impl<'a> SearchState<'a> {
    pub fn new(inst: &'a WpvcInstance) -> Self {
        Self::from_parts(&inst.graph, inst.budget.clone(), inst.threshold.clone())
    }

    pub fn from_parts(graph: &'a Graph, budget: Weight, need: Weight) -> Self {
        SearchState {
            graph,
            alive: vec![true; graph.n()],
            wdeg: graph.vertices().map(|v| graph.weighted_degree_unchecked(v)).collect(),
            total: graph.total_profit(),
            budget,
            need,
            chosen: Vec::new(),
            trail: Vec::new(),
        }
    }

    /// Residual weighted degree.
    #[inline]
    pub fn wdeg(&self, v: VertexId) -> &Weight {
        &self.wdeg[v]
    }

    #[inline]
    pub fn selectable(&self, v: VertexId) -> bool {
        self.alive[v] && *self.graph.cost(v) <= self.budget
    }

    pub fn alive_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.graph.vertices().filter(move |&v| self.alive[v])
    }

    /// Alive neighbors of `v`, paired with the connecting edge's profit.
    pub fn alive_neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, &Weight)> + '_ {
        self.graph.incident(v).iter().filter_map(move |&e| {
            let edge = self.graph.edge(e);
            let u = edge.other(v);
            self.alive[u].then_some((u, &edge.profit))
        })
    }

    pub fn take(&mut self, v: VertexId) {
        debug_assert!(self.selectable(v));
        self.budget -= self.graph.cost(v);
        let gain = std::mem::take(&mut self.wdeg[v]);
        let need = if gain >= self.need {
            std::mem::take(&mut self.need)
        } else {
            let old = self.need.clone();
            self.need -= &gain;
            old
        };
        self.alive[v] = false;
        for &e in self.graph.incident(v) {
            let edge = self.graph.edge(e);
            let u = edge.other(v);
            if self.alive[u] {
                self.wdeg[u] -= &edge.profit;
            }
        }
        self.total -= &gain;
        self.chosen.push(v);
        self.trail.push(Undo { vertex: v, need, wdeg: gain });
    }

    pub fn undo(&mut self) {
        let Undo { vertex: v, need, wdeg } = self.trail.pop().expect("undo without take");
        self.chosen.pop();
        self.total += &wdeg;
        for &e in self.graph.incident(v) {
            let edge = self.graph.edge(e);
            let u = edge.other(v);
            if self.alive[u] {
                self.wdeg[u] += &edge.profit;
            }
        }
        self.alive[v] = true;
        self.wdeg[v] = wdeg;
        self.need = need;
        self.budget += self.graph.cost(v);
    }

    /// Takes every cost-0 vertex. Covering more never hurts, so some optimal
    /// solution contains all of them.
    pub fn take_free_vertices(&mut self) -> usize {
        let free: Vec<VertexId> = self.alive_vertices().filter(|&v| self.graph.cost(v).is_zero()).collect();
        for &v in &free {
            self.take(v);
        }
        free.len()
    }

    /// `Some(true)` when the threshold is met, `Some(false)` when it cannot
    /// be met, `None` otherwise. Assumes no cost-0 vertex is alive.
    pub fn base_case(&self) -> Option<bool> {
        if self.need.is_zero() {
            Some(true)
        } else if self.total < self.need || self.budget.is_zero() {
            Some(false)
        } else {
            None
        }
    }
}

/// Branching statistics for one search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub max_depth: usize,
    pub max_fanout: usize,
    /// Nodes answered by the independent-set shortcut of the unit-cost solver.
    pub case1_hits: u64,
}

impl SearchStats {
    pub(crate) fn enter(&mut self, depth: usize) {
        self.nodes_expanded += 1;
        self.max_depth = self.max_depth.max(depth);
    }

    pub(crate) fn branch(&mut self, fanout: usize) {
        self.max_fanout = self.max_fanout.max(fanout);
    }

    pub(crate) fn absorb(&mut self, other: &SearchStats) {
        self.nodes_expanded += other.nodes_expanded;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.max_fanout = self.max_fanout.max(other.max_fanout);
        self.case1_hits += other.case1_hits;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn take_matches_residual_instance() {
        let g = Graph::weighted(&[1, 2, 1, 1], &[(0, 1, 3), (1, 2, 2), (2, 3, 5), (0, 3, 1)]).unwrap();
        let inst = WpvcInstance::new(g, 3u32, 7u32);
        for v in 0..4 {
            let mut st = SearchState::new(&inst);
            st.take(v);
            let (res, ids) = inst.residual_many(&[v]).unwrap();
            assert_eq!(st.budget, res.budget);
            assert_eq!(st.need, res.threshold);
            for (new, &old) in ids.iter().enumerate() {
                assert_eq!(st.wdeg(old), &res.graph.weighted_degree(new).unwrap());
            }
            assert_eq!(st.total, res.graph.total_profit());
            st.undo();
            let fresh = SearchState::new(&inst);
            assert_eq!(st.wdeg, fresh.wdeg);
            assert_eq!((st.budget.clone(), st.need.clone()), (fresh.budget.clone(), fresh.need.clone()));
            assert_eq!(st.total, fresh.total);
        }
    }

    #[test]
    fn threshold_clamps_at_zero() {
        let g = Graph::weighted(&[1, 1], &[(0, 1, 9)]).unwrap();
        let inst = WpvcInstance::new(g, 1u32, 4u32);
        let mut st = SearchState::new(&inst);
        st.take(0);
        assert!(st.need.is_zero());
        assert_eq!(st.base_case(), Some(true));
        st.undo();
        assert_eq!(st.need, Weight::from(4u32));
    }
}
