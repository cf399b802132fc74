//! Reduction from multi-colored clique to weighted partial vertex cover on
//! bipartite graphs, and its unit-profit variant with pendant vertices.
//!
//! For a source graph on `n` vertices with `k` colors the reduced graph has
//! two copies of the vertex set, `V'` (ids `0..n`, colors `1..=k`) and `U'`
//! (ids `n..2n`, colors `k+1..=2k`), plus two heavy vertices `z1 = 2n` and
//! `z2 = 2n+1`. A vertex of color `i` costs `2^i`; `z1`/`z2` cost
//! `2^(2k+1)`, more than the whole budget `R = 2^(2k+1) - 2`. Every gadget
//! vertex `x` gets a total incident profit of `2^χ(x)·(n+1) + 5^χ(x)`,
//! topped up through its edge to `z1` (for `V'`) or `z2` (for `U'`).

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::error::OracleError;
use crate::graph::{Graph, GraphError, VertexId, Weight};
use crate::instance::{rational, CoverSolution, WpvcInstance};
use crate::oracle::{oracle_mcq, oracle_wpvc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GadgetError {
    #[error("at least one color is required")]
    NoColors,
    #[error("vertex {vertex} has color {color}, outside 1..={k}")]
    InvalidColor { vertex: VertexId, color: usize, k: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0} does not fit in memory")]
    TooLarge(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// Multi-colored clique instance: a unit-weight graph whose vertices carry
/// colors `1..=k`, with every color class independent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McqInstance {
    graph: Graph,
    k: usize,
    color: Vec<usize>,
    dropped: Vec<(VertexId, VertexId)>,
}

impl McqInstance {
    /// Edges inside a color class cannot lie in a multi-colored clique; they
    /// are dropped and listed in [`McqInstance::dropped_edges`].
    pub fn new(k: usize, color: Vec<usize>, edges: &[(VertexId, VertexId)]) -> Result<Self, GadgetError> {
        if k == 0 {
            return Err(GadgetError::NoColors);
        }
        if let Some((vertex, &c)) = color.iter().enumerate().find(|(_, &c)| c == 0 || c > k) {
            return Err(GadgetError::InvalidColor { vertex, color: c, k });
        }
        let n = color.len();
        if let Some(&(u, v)) = edges.iter().find(|&&(u, v)| u >= n || v >= n) {
            return Err(GraphError::VertexOutOfRange(u.max(v)).into());
        }
        let (dropped, kept): (Vec<_>, Vec<_>) = edges.iter().partition(|&&(u, v)| color[u] == color[v]);
        let graph = Graph::unit(n, &kept)?;
        Ok(McqInstance { graph, k, color, dropped })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn color(&self, v: VertexId) -> usize {
        self.color[v]
    }

    /// Vertices of each color; entry `i` holds color `i + 1`.
    pub fn classes(&self) -> Vec<Vec<VertexId>> {
        let mut classes = vec![Vec::new(); self.k];
        for (v, &c) in self.color.iter().enumerate() {
            classes[c - 1].push(v);
        }
        classes
    }

    pub fn dropped_edges(&self) -> &[(VertexId, VertexId)] {
        &self.dropped
    }

    pub fn is_multicolored_clique(&self, vertices: &[VertexId]) -> bool {
        let mut colors: Vec<usize> = vertices.iter().map(|&v| self.color[v]).collect();
        colors.sort_unstable();
        colors == (1..=self.k).collect::<Vec<_>>()
            && vertices
                .iter()
                .enumerate()
                .all(|(i, &a)| vertices[i + 1..].iter().all(|&b| self.graph.edge_between(a, b).is_some()))
    }
}

/// What a vertex of a reduced instance stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GadgetRole {
    /// Copy `v_i` of source vertex `i`.
    VCopy(VertexId),
    /// Copy `u_i` of source vertex `i`.
    UCopy(VertexId),
    Z1,
    Z2,
    /// Pendant replacing one unit of the heavy-edge profit of a gadget vertex.
    Pendant(VertexId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionOutput {
    pub instance: WpvcInstance,
    pub roles: Vec<GadgetRole>,
    pub k: usize,
    pub source_n: usize,
}

impl ReductionOutput {
    /// Color of a copy vertex (`1..=2k`).
    pub fn chi(&self, x: VertexId, mcq: &McqInstance) -> Option<usize> {
        match self.roles[x] {
            GadgetRole::VCopy(i) => Some(mcq.color(i)),
            GadgetRole::UCopy(i) => Some(mcq.color(i) + self.k),
            _ => None,
        }
    }

    /// Vertex labels derived from the source labels: `v<a>`, `u<a>`, `z1`,
    /// `z2`, and `p<owner>_<j>` for pendants.
    pub fn labels(&self, source: &[String]) -> Vec<String> {
        let mut next_pendant = vec![0usize; self.roles.len()];
        let mut out: Vec<String> = Vec::with_capacity(self.roles.len());
        for role in &self.roles {
            let l = match *role {
                GadgetRole::VCopy(i) => format!("v{}", source[i]),
                GadgetRole::UCopy(i) => format!("u{}", source[i]),
                GadgetRole::Z1 => "z1".into(),
                GadgetRole::Z2 => "z2".into(),
                GadgetRole::Pendant(x) => {
                    next_pendant[x] += 1;
                    format!("p{}_{}", out[x], next_pendant[x])
                }
            };
            out.push(l);
        }
        out
    }

    /// Provenance lines of the form `src <a> -> u<a>,v<a>`.
    pub fn provenance(&self, source: &[String]) -> Vec<String> {
        let labels = self.labels(source);
        let mut lines = vec![format!(
            "reduced from multi-colored clique: n={} k={} R={} L={}",
            self.source_n, self.k, self.instance.budget, self.instance.threshold
        )];
        for (i, s) in source.iter().enumerate().take(self.source_n) {
            lines.push(format!("src v{s} -> {},{}", labels[self.source_n + i], labels[i]));
        }
        let z: Vec<&String> = self
            .roles
            .iter()
            .zip(&labels)
            .filter(|(r, _)| matches!(r, GadgetRole::Z1 | GadgetRole::Z2))
            .map(|(_, l)| l)
            .collect();
        if !z.is_empty() {
            lines.push(format!("heavy vertices: {}", z.iter().map(|s| s.as_str()).collect::<Vec<_>>().join(",")));
        }
        lines
    }
}

fn pow(base: u32, exp: usize) -> Weight {
    BigUint::from(base).pow(exp as u32)
}

/// `R = 2^(2k+1) - 2`.
pub fn reduction_budget(k: usize) -> Weight {
    pow(2, 2 * k + 1) - 2u32
}

/// `L = (n+1)·R + (5/4)·(5^(2k) - 1)`.
pub fn reduction_threshold(k: usize, n: usize) -> Weight {
    (Weight::from(n + 1) * reduction_budget(k)) + (pow(5, 2 * k) - 1u32) * 5u32 / 4u32
}

/// Target total incident profit of a copy vertex of color `chi`.
pub fn incident_target(chi: usize, n: usize) -> Weight {
    pow(2, chi) * Weight::from(n + 1) + pow(5, chi)
}

pub fn reduce_mcq_to_wpvcbd(mcq: &McqInstance) -> Result<ReductionOutput, GadgetError> {
    let n = mcq.n();
    let k = mcq.k();
    let src = mcq.graph();
    if let Some(e) = src.edges().iter().find(|e| mcq.color(e.u) == mcq.color(e.v)) {
        return Err(GadgetError::Internal(format!("edge {}-{} inside a color class", e.u, e.v)));
    }
    let chi = |x: VertexId| if x < n { mcq.color(x) } else { mcq.color(x - n) + k };
    let (z1, z2) = (2 * n, 2 * n + 1);
    let heavy = pow(2, 2 * k + 1);
    let mut costs: Vec<Weight> = (0..2 * n).map(|x| pow(2, chi(x))).collect();
    costs.push(heavy.clone());
    costs.push(heavy);

    let mut edges: Vec<(VertexId, VertexId, Weight)> = Vec::new();
    let mut deg = vec![0usize; 2 * n];
    for i in 0..n {
        let u = n + i;
        for v in 0..n {
            let same_class = chi(u) == chi(v) + k;
            let joined = if same_class { i != v } else { src.edge_between(i, v).is_none() };
            if joined {
                edges.push((u, v, Weight::one()));
                deg[u] += 1;
                deg[v] += 1;
            }
        }
    }
    for x in 0..2 * n {
        let target = incident_target(chi(x), n);
        let d = Weight::from(deg[x]);
        if target <= d {
            return Err(GadgetError::Internal(format!("vertex {x} has degree {} >= its profit target", deg[x])));
        }
        let z = if x < n { z1 } else { z2 };
        edges.push((x, z, target - d));
    }

    let graph = Graph::from_edges(costs, edges)?;
    let instance = WpvcInstance::new(graph, reduction_budget(k), reduction_threshold(k, n)).bipartite();
    let mut roles: Vec<GadgetRole> = (0..n).map(GadgetRole::VCopy).collect();
    roles.extend((0..n).map(GadgetRole::UCopy));
    roles.push(GadgetRole::Z1);
    roles.push(GadgetRole::Z2);
    Ok(ReductionOutput { instance, roles, k, source_n: n })
}

/// Replaces every edge to `z1`/`z2` of profit `w` by `w` pendant vertices
/// joined to the same gadget vertex with unit profit. Pendants cost as much
/// as `z1`, so they are never affordable either. Budgets are unchanged.
pub fn pendantize(out: &ReductionOutput) -> Result<ReductionOutput, GadgetError> {
    let g = &out.instance.graph;
    let is_z = |v: VertexId| matches!(out.roles[v], GadgetRole::Z1 | GadgetRole::Z2);
    let kept: Vec<VertexId> = g.vertices().filter(|&v| !is_z(v)).collect();
    let mut new_id = vec![usize::MAX; g.n()];
    for (i, &v) in kept.iter().enumerate() {
        new_id[v] = i;
    }
    let heavy = pow(2, 2 * out.k + 1);
    let mut costs: Vec<Weight> = kept.iter().map(|&v| g.cost(v).clone()).collect();
    let mut roles: Vec<GadgetRole> = kept.iter().map(|&v| out.roles[v]).collect();
    let mut edges: Vec<(VertexId, VertexId, Weight)> = Vec::new();
    let mut pendants: Vec<(VertexId, usize)> = Vec::new();
    for e in g.edges() {
        match (is_z(e.u), is_z(e.v)) {
            (false, false) => edges.push((new_id[e.u], new_id[e.v], e.profit.clone())),
            (true, true) => return Err(GadgetError::Internal("edge between z1 and z2".into())),
            (zu, _) => {
                let x = if zu { e.v } else { e.u };
                let count = e
                    .profit
                    .to_usize()
                    .ok_or_else(|| GadgetError::TooLarge(format!("{} pendant vertices", e.profit)))?;
                pendants.push((new_id[x], count));
            }
        }
    }
    pendants.sort_unstable();
    for (x, count) in pendants {
        for _ in 0..count {
            let p = costs.len();
            costs.push(heavy.clone());
            roles.push(GadgetRole::Pendant(x));
            edges.push((x, p, Weight::one()));
        }
    }
    let graph = Graph::from_edges(costs, edges)?;
    let instance = WpvcInstance::new(graph, out.instance.budget.clone(), out.instance.threshold.clone()).bipartite();
    Ok(ReductionOutput { instance, roles, k: out.k, source_n: out.source_n })
}

/// Oracle-level comparison of a clique instance with its reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCheck {
    pub clique: Option<Vec<VertexId>>,
    pub reduced_yes: bool,
    pub pendant_yes: Option<bool>,
    /// For a clique `X`, whether `{u_i, v_i : i ∈ X}` has cost exactly `R`
    /// and profit exactly `L`.
    pub forward_exact: Option<bool>,
}

impl ReductionCheck {
    pub fn equivalent(&self) -> bool {
        self.clique.is_some() == self.reduced_yes
            && self.pendant_yes.is_none_or(|p| p == self.reduced_yes)
            && self.forward_exact != Some(false)
    }
}

/// Solves both sides by brute force. `cap` bounds the affordable vertices of
/// the reduced instance (the `2n` copies).
pub fn verify_reduction(mcq: &McqInstance, with_pendants: bool, cap: usize) -> Result<ReductionCheck, GadgetError> {
    let clique = oracle_mcq(mcq)?;
    let out = reduce_mcq_to_wpvcbd(mcq)?;
    let reduced_yes = oracle_wpvc(&out.instance, cap)?.verdict.is_yes();
    let pendant_yes = if with_pendants {
        Some(oracle_wpvc(&pendantize(&out)?.instance, cap)?.verdict.is_yes())
    } else {
        None
    };
    let forward_exact = clique.as_ref().map(|x| {
        let n = mcq.n();
        let s = x.iter().flat_map(|&i| [i, n + i]);
        let sol = CoverSolution::integral(&out.instance.graph, s);
        sol.cost == rational(&out.instance.budget) && sol.profit == rational(&out.instance.threshold)
    });
    Ok(ReductionCheck { clique, reduced_yes, pendant_yes, forward_exact })
}
