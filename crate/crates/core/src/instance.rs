//! Problem instances, solutions and solve reports shared by every solver.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::graph::{bipartition, Graph, GraphError, Matching, NotBipartite, VertexId, Weight};

/// Which weights of an instance are fixed to one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Arbitrary costs and profits.
    Wpvc,
    /// Unit costs.
    Epvc,
    /// Unit profits.
    Vpvc,
    /// Unit costs and unit profits.
    Pvc,
}

impl Variant {
    pub fn infer(g: &Graph) -> Variant {
        match (g.all_unit_costs(), g.all_unit_profits()) {
            (true, true) => Variant::Pvc,
            (true, false) => Variant::Epvc,
            (false, true) => Variant::Vpvc,
            (false, false) => Variant::Wpvc,
        }
    }

    pub fn unit_costs(self) -> bool {
        matches!(self, Variant::Epvc | Variant::Pvc)
    }

    pub fn unit_profits(self) -> bool {
        matches!(self, Variant::Vpvc | Variant::Pvc)
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Wpvc => "wpvc",
            Variant::Epvc => "epvc",
            Variant::Vpvc => "vpvc",
            Variant::Pvc => "pvc",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "wpvc" => Ok(Variant::Wpvc),
            "epvc" => Ok(Variant::Epvc),
            "vpvc" => Ok(Variant::Vpvc),
            "pvc" => Ok(Variant::Pvc),
            other => Err(format!("unknown variant '{other}'")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("variant/weight mismatch: {variant} requires {requirement}")]
    VariantMismatch { variant: Variant, requirement: &'static str },
    #[error(transparent)]
    NotBipartite(#[from] NotBipartite),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("forcing vertices of total cost {cost} exceeds the budget {budget}")]
    BudgetExceeded { cost: Weight, budget: Weight },
    #[error("vertex {0} listed twice")]
    DuplicateVertex(VertexId),
}

/// A decision instance: is there a vertex set of cost at most `budget`
/// covering edges of total profit at least `threshold`?
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WpvcInstance {
    pub graph: Graph,
    pub budget: Weight,
    pub threshold: Weight,
    pub variant: Variant,
    pub bipartite_required: bool,
}

impl WpvcInstance {
    /// Builds an instance whose variant is inferred from the weights.
    pub fn new(graph: Graph, budget: impl Into<Weight>, threshold: impl Into<Weight>) -> Self {
        let variant = Variant::infer(&graph);
        WpvcInstance {
            graph,
            budget: budget.into(),
            threshold: threshold.into(),
            variant,
            bipartite_required: false,
        }
    }

    pub fn bipartite(mut self) -> Self {
        self.bipartite_required = true;
        self
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        if self.variant.unit_costs() && !self.graph.all_unit_costs() {
            violations.push(Violation::VariantMismatch {
                variant: self.variant,
                requirement: "all vertex costs equal to 1",
            });
        }
        if self.variant.unit_profits() && !self.graph.all_unit_profits() {
            violations.push(Violation::VariantMismatch {
                variant: self.variant,
                requirement: "all edge profits equal to 1",
            });
        }
        if self.bipartite_required {
            if let Err(e) = bipartition(&self.graph) {
                violations.push(Violation::NotBipartite(e));
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    /// The instance left after forcing `v` into the solution. Vertex ids above
    /// `v` shift down by one.
    pub fn residual(&self, v: VertexId) -> Result<WpvcInstance, InstanceError> {
        self.residual_many(&[v]).map(|(inst, _)| inst)
    }

    /// Forces every vertex of `forced` at once. Returns the residual instance
    /// and, for each residual vertex, its id in `self`.
    pub fn residual_many(&self, forced: &[VertexId]) -> Result<(WpvcInstance, Vec<VertexId>), InstanceError> {
        let g = &self.graph;
        let mut removed = vec![false; g.n()];
        let mut cost = Weight::zero();
        for &v in forced {
            if v >= g.n() {
                return Err(GraphError::VertexOutOfRange(v).into());
            }
            if removed[v] {
                return Err(InstanceError::DuplicateVertex(v));
            }
            removed[v] = true;
            cost += g.cost(v);
        }
        if cost > self.budget {
            return Err(InstanceError::BudgetExceeded { cost, budget: self.budget.clone() });
        }
        let gained = g.coverage(forced)?.profit;
        let kept: Vec<VertexId> = g.vertices().filter(|&v| !removed[v]).collect();
        let mut new_id = vec![usize::MAX; g.n()];
        for (i, &v) in kept.iter().enumerate() {
            new_id[v] = i;
        }
        let graph = Graph::from_edges(
            kept.iter().map(|&v| g.cost(v).clone()).collect(),
            g.edges()
                .iter()
                .filter(|e| !removed[e.u] && !removed[e.v])
                .map(|e| (new_id[e.u], new_id[e.v], e.profit.clone())),
        )?;
        let threshold = if gained >= self.threshold {
            Weight::zero()
        } else {
            &self.threshold - &gained
        };
        Ok((
            WpvcInstance {
                graph,
                budget: &self.budget - cost,
                threshold,
                variant: self.variant,
                bipartite_required: self.bipartite_required,
            },
            kept,
        ))
    }

    /// Base cases shared by the solvers.
    ///
    /// A zero budget still buys every cost-0 vertex, so in that case the
    /// answer is decided by the coverage of the free vertices.
    pub fn is_trivial(&self) -> Triviality {
        let g = &self.graph;
        if self.threshold.is_zero() {
            return Triviality::Yes(CoverSolution::integral(g, []));
        }
        if g.total_profit() < self.threshold {
            return Triviality::No;
        }
        if self.budget.is_zero() {
            let free: Vec<VertexId> = g.vertices().filter(|&v| g.cost(v).is_zero()).collect();
            let sol = CoverSolution::integral(g, free);
            return if sol.profit >= rational(&self.threshold) {
                Triviality::Yes(sol)
            } else {
                Triviality::No
            };
        }
        Triviality::Undecided
    }

    /// Whether `sol` fits the budget and reaches the threshold.
    pub fn accepts(&self, sol: &CoverSolution) -> bool {
        sol.cost <= rational(&self.budget) && sol.profit >= rational(&self.threshold)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Triviality {
    Yes(CoverSolution),
    No,
    Undecided,
}

pub fn rational(w: &Weight) -> BigRational {
    BigRational::from_integer(BigInt::from(w.clone()))
}

/// A cover with at most one fractionally taken vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSolution {
    pub integral: BTreeSet<VertexId>,
    /// Vertex taken to an extent strictly between 0 and 1.
    pub fractional: Option<(VertexId, BigRational)>,
    pub cost: BigRational,
    pub profit: BigRational,
}

impl CoverSolution {
    pub fn integral(g: &Graph, vertices: impl IntoIterator<Item = VertexId>) -> Self {
        Self::evaluate(g, vertices, None)
    }

    /// Computes cost and profit. An edge covered by an integral vertex counts
    /// fully; an edge covered only by the fractional vertex counts at its
    /// extent.
    pub fn evaluate(
        g: &Graph,
        vertices: impl IntoIterator<Item = VertexId>,
        fractional: Option<(VertexId, BigRational)>,
    ) -> Self {
        let integral: BTreeSet<VertexId> = vertices.into_iter().collect();
        let cost: Weight = integral.iter().map(|&v| g.cost(v)).sum();
        let picked: Vec<VertexId> = integral.iter().copied().collect();
        let covered = g.coverage(&picked).expect("solution vertices are valid");
        let mut cost_q = rational(&cost);
        let mut profit_q = rational(&covered.profit);
        if let Some((w, extent)) = &fractional {
            cost_q += extent * rational(g.cost(*w));
            let solely: Weight = g
                .incident(*w)
                .iter()
                .filter(|e| !covered.edges.contains(e))
                .map(|&e| &g.edge(e).profit)
                .sum();
            profit_q += extent * rational(&solely);
        }
        CoverSolution { integral, fractional, cost: cost_q, profit: profit_q }
    }

    pub fn vertex_count(&self) -> usize {
        self.integral.len() + usize::from(self.fractional.is_some())
    }

    pub fn is_integral(&self) -> bool {
        self.fractional.is_none()
    }
}

pub(crate) fn is_strict_fraction(q: &BigRational) -> bool {
    q > &BigRational::zero() && q < &BigRational::one()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
}

impl Verdict {
    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "yes",
            Verdict::No => "no",
        })
    }
}

/// Outcome of one solver or oracle run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveReport {
    pub verdict: Verdict,
    pub witness: Option<CoverSolution>,
    /// Matching carried by the covered edges (matching-constrained solver only).
    pub matching: Option<Matching>,
    pub nodes_expanded: u64,
    pub max_depth: usize,
    /// Largest number of children any search node branched into.
    pub max_fanout: usize,
    pub wall_time: Duration,
}

impl SolveReport {
    pub fn no() -> Self {
        SolveReport {
            verdict: Verdict::No,
            witness: None,
            matching: None,
            nodes_expanded: 0,
            max_depth: 0,
            max_fanout: 0,
            wall_time: Duration::ZERO,
        }
    }

    pub fn yes(witness: CoverSolution) -> Self {
        SolveReport { verdict: Verdict::Yes, witness: Some(witness), ..Self::no() }
    }
}
