//! Seeded instance generators.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`. A draw
//! below `b` is `next_u64() % b`. Edge sets are chosen by a partial
//! Fisher–Yates shuffle of the candidate pairs listed in lexicographic
//! order: for `i = 0, 1, ...` swap position `i` with `i + draw(len - i)`.
//! Costs and profits are drawn after the edges, vertex costs first in id
//! order, then edge profits in output order.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gadgets::{GadgetError, McqInstance};
use crate::graph::{Graph, GraphError, VertexId, Weight};
use crate::instance::WpvcInstance;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Gadget(#[from] GadgetError),
}

pub struct Draw(ChaCha8Rng);

impl Draw {
    pub fn new(seed: u64) -> Self {
        Draw(ChaCha8Rng::seed_from_u64(seed))
    }

    /// Uniform-ish value in `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.0.next_u64() % bound
    }

    /// Value in `lo..=hi`.
    pub fn between(&mut self, lo: u64, hi: u64) -> u64 {
        lo + self.below(hi - lo + 1)
    }

    /// Moves a uniformly chosen prefix of length `k` to the front.
    pub fn partial_shuffle<T>(&mut self, items: &mut [T], k: usize) {
        let len = items.len();
        for i in 0..k.min(len) {
            let j = i + self.below((len - i) as u64) as usize;
            items.swap(i, j);
        }
    }
}

/// Shape and weight ranges shared by the weighted generators. Costs are
/// drawn from `1..=max_cost`, profits from `1..=max_profit`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenParams {
    pub n: usize,
    pub m: usize,
    pub max_cost: u64,
    pub max_profit: u64,
    pub budget: u64,
    pub threshold: u64,
}

impl GenParams {
    pub fn unit(n: usize, m: usize, budget: u64, threshold: u64) -> Self {
        GenParams { n, m, max_cost: 1, max_profit: 1, budget, threshold }
    }

    fn check(&self) -> Result<(), GenError> {
        if self.max_cost == 0 || self.max_profit == 0 {
            return Err(GenError::Infeasible("max_cost and max_profit must be at least 1".into()));
        }
        Ok(())
    }
}

fn weigh(p: &GenParams, draw: &mut Draw, pairs: &[(VertexId, VertexId)]) -> Result<Graph, GenError> {
    let costs: Vec<Weight> = (0..p.n).map(|_| Weight::from(draw.between(1, p.max_cost))).collect();
    let edges: Vec<(VertexId, VertexId, Weight)> =
        pairs.iter().map(|&(u, v)| (u, v, Weight::from(draw.between(1, p.max_profit)))).collect();
    Ok(Graph::from_edges(costs, edges)?)
}

/// Random bipartite graph with sides `0..ceil(n/2)` and `ceil(n/2)..n`
/// and exactly `m` edges.
pub fn gen_bipartite(p: &GenParams, seed: u64) -> Result<WpvcInstance, GenError> {
    p.check()?;
    let left = p.n.div_ceil(2);
    let mut pairs: Vec<(VertexId, VertexId)> =
        (0..left).flat_map(|u| (left..p.n).map(move |v| (u, v))).collect();
    if p.m > pairs.len() {
        return Err(GenError::Infeasible(format!(
            "{} edges requested but sides of {left} and {} allow only {}",
            p.m,
            p.n - left,
            pairs.len()
        )));
    }
    let mut draw = Draw::new(seed);
    draw.partial_shuffle(&mut pairs, p.m);
    pairs.truncate(p.m);
    pairs.sort_unstable();
    let g = weigh(p, &mut draw, &pairs)?;
    Ok(WpvcInstance::new(g, p.budget, p.threshold).bipartite())
}

/// Random graph with `m` edges and maximum degree at most `d`: candidate
/// pairs are shuffled and accepted greedily while both endpoints have
/// degree below `d`.
pub fn gen_bounded_degree(p: &GenParams, d: usize, seed: u64) -> Result<WpvcInstance, GenError> {
    p.check()?;
    if p.m > p.n * d / 2 {
        return Err(GenError::Infeasible(format!(
            "{} edges exceed n*d/2 = {} for degree bound {d}",
            p.m,
            p.n * d / 2
        )));
    }
    let mut pairs: Vec<(VertexId, VertexId)> =
        (0..p.n).flat_map(|u| (u + 1..p.n).map(move |v| (u, v))).collect();
    let mut draw = Draw::new(seed);
    let len = pairs.len();
    draw.partial_shuffle(&mut pairs, len);
    let mut deg = vec![0usize; p.n];
    let mut chosen = Vec::with_capacity(p.m);
    for (u, v) in pairs {
        if chosen.len() == p.m {
            break;
        }
        if deg[u] < d && deg[v] < d {
            deg[u] += 1;
            deg[v] += 1;
            chosen.push((u, v));
        }
    }
    if chosen.len() < p.m {
        return Err(GenError::Infeasible(format!(
            "only {} of {} edges fit under degree bound {d}",
            chosen.len(),
            p.m
        )));
    }
    chosen.sort_unstable();
    let g = weigh(p, &mut draw, &chosen)?;
    Ok(WpvcInstance::new(g, p.budget, p.threshold))
}

/// Multi-colored clique instance with `k` classes of `class_size` vertices;
/// vertex `i` has color `i / class_size + 1`. When `plant` is set, one
/// vertex per class is drawn (class order) and joined into a clique first.
/// Every other cross-class pair becomes an edge when a draw below 100 is
/// below `edge_percent`.
pub fn gen_mcq_planted(
    k: usize,
    class_size: usize,
    edge_percent: u64,
    plant: bool,
    seed: u64,
) -> Result<(McqInstance, Option<Vec<VertexId>>), GenError> {
    if k == 0 || class_size == 0 {
        return Err(GenError::Infeasible("k and the class size must be at least 1".into()));
    }
    if edge_percent > 100 {
        return Err(GenError::Infeasible(format!("edge percentage {edge_percent} above 100")));
    }
    let n = k * class_size;
    let color: Vec<usize> = (0..n).map(|v| v / class_size + 1).collect();
    let mut draw = Draw::new(seed);
    let planted: Option<Vec<VertexId>> =
        plant.then(|| (0..k).map(|c| c * class_size + draw.below(class_size as u64) as usize).collect());
    let in_clique = |v: VertexId| planted.as_ref().is_some_and(|p| p.contains(&v));
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if color[u] == color[v] {
                continue;
            }
            // planted pairs consume no draw
            if (in_clique(u) && in_clique(v)) || draw.below(100) < edge_percent {
                edges.push((u, v));
            }
        }
    }
    Ok((McqInstance::new(k, color, &edges)?, planted))
}
