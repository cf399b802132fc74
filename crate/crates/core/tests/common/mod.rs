#![allow(dead_code)]

use partialcover::{Graph, WpvcInstance};
use proptest::prelude::*;

/// Plain instance data, independent of the library types.
#[derive(Debug, Clone)]
pub struct Raw {
    pub costs: Vec<u64>,
    pub edges: Vec<(usize, usize, u64)>,
    pub r: u64,
    pub l: u64,
}

impl Raw {
    pub fn n(&self) -> usize {
        self.costs.len()
    }

    pub fn instance(&self) -> WpvcInstance {
        let g = Graph::weighted(&self.costs, &self.edges).expect("valid raw graph");
        WpvcInstance::new(g, self.r, self.l)
    }

    pub fn cost(&self, mask: u32) -> u64 {
        (0..self.n()).filter(|&v| mask >> v & 1 == 1).map(|v| self.costs[v]).sum()
    }

    pub fn profit(&self, mask: u32) -> u64 {
        self.edges
            .iter()
            .filter(|&&(u, v, _)| (mask >> u | mask >> v) & 1 == 1)
            .map(|&(_, _, p)| p)
            .sum()
    }

    /// Exhaustive search over all subsets, restricted to those containing
    /// every vertex in `must`.
    pub fn brute_with(&self, must: u32) -> bool {
        (0u32..1 << self.n()).any(|mask| mask & must == must && self.cost(mask) <= self.r && self.profit(mask) >= self.l)
    }

    pub fn brute(&self) -> bool {
        self.brute_with(0)
    }
}

/// Candidate pairs: all pairs, or only pairs across the halves
/// `0..ceil(n/2)` and `ceil(n/2)..n`.
pub fn pairs(n: usize, bipartite: bool) -> Vec<(usize, usize)> {
    let half = n.div_ceil(2);
    let mut out = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !bipartite || (u < half && v >= half) {
                out.push((u, v));
            }
        }
    }
    out
}

pub struct Shape {
    pub n: std::ops::RangeInclusive<usize>,
    pub cost: std::ops::RangeInclusive<u64>,
    pub profit: std::ops::RangeInclusive<u64>,
    pub r: std::ops::RangeInclusive<u64>,
    pub l: std::ops::RangeInclusive<u64>,
    pub bipartite: bool,
    /// Keep each candidate pair with this chance in percent.
    pub density: u32,
}

pub fn arb_raw(shape: Shape) -> impl Strategy<Value = Raw> {
    let Shape { n, cost, profit, r, l, bipartite, density } = shape;
    n.prop_flat_map(move |n| {
        let cand = pairs(n, bipartite);
        let k = cand.len();
        (
            prop::collection::vec(cost.clone(), n),
            prop::collection::vec((0u32..100, profit.clone()), k),
            r.clone(),
            l.clone(),
        )
            .prop_map(move |(costs, picks, r, l)| {
                let edges = cand
                    .iter()
                    .zip(picks)
                    .filter(|(_, (roll, _))| *roll < density)
                    .map(|(&(u, v), (_, p))| (u, v, p))
                    .collect();
                Raw { costs, edges, r, l }
            })
    })
}

/// Maximum matching by exhaustive search over edge subsets.
pub fn brute_matching(n: usize, edges: &[(usize, usize)]) -> usize {
    fn go(i: usize, used: &mut Vec<bool>, edges: &[(usize, usize)]) -> usize {
        if i == edges.len() {
            return 0;
        }
        let skip = go(i + 1, used, edges);
        let (u, v) = edges[i];
        if used[u] || used[v] {
            return skip;
        }
        used[u] = true;
        used[v] = true;
        let take = 1 + go(i + 1, used, edges);
        used[u] = false;
        used[v] = false;
        skip.max(take)
    }
    go(0, &mut vec![false; n], edges)
}
