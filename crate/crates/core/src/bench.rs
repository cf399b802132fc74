//! Benchmark grids: generate instances, run a branching solver, and compare
//! the search statistics with the node-count bound of that solver.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::branching::{solve_epvcbd, solve_wpvc_bounded_degree, solve_wpvc_by_l};
use crate::error::SolveError;
use crate::generate::{gen_bipartite, gen_bounded_degree, GenError, GenParams};

pub const DEFAULT_SUITE: &str = include_str!("../suites/default.toml");

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("suite config: {0}")]
    Config(#[from] toml::de::Error),
    #[error("grid {grid}: {source}")]
    Generate { grid: usize, source: GenError },
    #[error("grid {grid}: {source}")]
    Solve { grid: usize, source: SolveError },
    #[error("grid {grid}: {msg}")]
    Grid { grid: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchAlg {
    Epvcbd,
    BoundedDegree,
    #[serde(rename = "by-L")]
    ByL,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchGenerator {
    BipartiteRandom,
    BoundedDegree,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub alg: BenchAlg,
    pub generator: BenchGenerator,
    pub n: usize,
    pub m: usize,
    /// Degree bound for the generator and for the bounded-degree solver.
    #[serde(default)]
    pub degree: Option<usize>,
    #[serde(default = "one")]
    pub max_cost: u64,
    #[serde(default = "one")]
    pub max_profit: u64,
    pub budgets: Vec<u64>,
    pub thresholds: Vec<u64>,
    #[serde(default = "one_usize")]
    pub instances: usize,
    #[serde(default)]
    pub seed: u64,
}

fn one() -> u64 {
    1
}

fn one_usize() -> usize {
    1
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Suite {
    #[serde(default)]
    pub grid: Vec<Grid>,
}

impl Suite {
    pub fn parse(text: &str) -> Result<Self, BenchError> {
        Ok(toml::from_str(text)?)
    }

    pub fn default_suite() -> Self {
        Self::parse(DEFAULT_SUITE).expect("bundled suite parses")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRow {
    pub grid: usize,
    pub alg: BenchAlg,
    pub seed: u64,
    pub n: usize,
    pub m: usize,
    pub budget: u64,
    pub threshold: u64,
    pub verdict: String,
    pub nodes_expanded: u64,
    pub max_depth: usize,
    pub max_fanout: usize,
    pub wall_us: u128,
    /// Node-count bound for the solver at these parameters.
    pub bound: BigUint,
    /// Empty when the run stays within all of its bounds.
    pub violations: Vec<String>,
}

impl BenchRow {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `(2R)^R`.
pub fn epvcbd_bound(r: u64) -> BigUint {
    BigUint::from(2 * r).pow(r as u32)
}

/// Tree size for degree `d`: `T(0) = 1`, `T(r) = 1 + (d+1)·r·T(r-1)`.
/// Depth is at most `R` and node `r` levels above the leaves has at most
/// `(d+1)·r` children, so this bounds the number of nodes. For `R = 1` it
/// is `d + 2`, one more than `((d+1)R)^R`.
pub fn bounded_degree_bound(d: usize, r: u64) -> BigUint {
    (1..=r).fold(BigUint::from(1u32), |t, i| BigUint::from(1u32) + BigUint::from((d as u64 + 1) * i) * t)
}

/// `L^(4L)`.
pub fn by_l_bound(l: u64) -> BigUint {
    BigUint::from(l).pow((4 * l) as u32)
}

fn grid_error(grid: usize, msg: impl Into<String>) -> BenchError {
    BenchError::Grid { grid, msg: msg.into() }
}

pub fn run_suite(suite: &Suite) -> Result<Vec<BenchRow>, BenchError> {
    let mut rows = Vec::new();
    for (gi, grid) in suite.grid.iter().enumerate() {
        let d = match (grid.generator, grid.alg, grid.degree) {
            (_, BenchAlg::BoundedDegree, None) | (BenchGenerator::BoundedDegree, _, None) => {
                return Err(grid_error(gi, "degree is required"));
            }
            (_, _, d) => d,
        };
        let mut seed = grid.seed;
        for &budget in &grid.budgets {
            for &threshold in &grid.thresholds {
                for _ in 0..grid.instances {
                    let params = GenParams {
                        n: grid.n,
                        m: grid.m,
                        max_cost: grid.max_cost,
                        max_profit: grid.max_profit,
                        budget,
                        threshold,
                    };
                    let inst = match grid.generator {
                        BenchGenerator::BipartiteRandom => gen_bipartite(&params, seed),
                        BenchGenerator::BoundedDegree => gen_bounded_degree(&params, d.unwrap_or(0), seed),
                    }
                    .map_err(|source| BenchError::Generate { grid: gi, source })?;
                    let solved = match grid.alg {
                        BenchAlg::Epvcbd => solve_epvcbd(&inst),
                        BenchAlg::BoundedDegree => solve_wpvc_bounded_degree(&inst, d.unwrap_or(0)),
                        BenchAlg::ByL => solve_wpvc_by_l(&inst),
                    };
                    let mut violations = Vec::new();
                    let report = match solved {
                        Ok(r) => r,
                        // A broken depth or fan-out bound surfaces as an internal error.
                        Err(SolveError::Internal(msg)) => {
                            violations.push(msg);
                            crate::instance::SolveReport::no()
                        }
                        Err(source) => return Err(BenchError::Solve { grid: gi, source }),
                    };
                    let bound = match grid.alg {
                        BenchAlg::Epvcbd => epvcbd_bound(budget),
                        BenchAlg::BoundedDegree => bounded_degree_bound(d.unwrap_or(0), budget),
                        BenchAlg::ByL => by_l_bound(threshold),
                    };
                    if BigUint::from(report.nodes_expanded) > bound {
                        violations.push(format!("{} nodes above the bound {bound}", report.nodes_expanded));
                    }
                    let depth_ok = match grid.alg {
                        BenchAlg::ByL => threshold == 0 || (report.max_depth as u64) < 2 * threshold,
                        _ => report.max_depth as u64 <= budget,
                    };
                    if !depth_ok {
                        violations.push(format!("depth {} out of bounds", report.max_depth));
                    }
                    rows.push(BenchRow {
                        grid: gi,
                        alg: grid.alg,
                        seed,
                        n: inst.graph.n(),
                        m: inst.graph.m(),
                        budget,
                        threshold,
                        verdict: report.verdict.to_string(),
                        nodes_expanded: report.nodes_expanded,
                        max_depth: report.max_depth,
                        max_fanout: report.max_fanout,
                        wall_us: report.wall_time.as_micros(),
                        bound,
                        violations,
                    });
                    seed = seed.wrapping_add(1);
                }
            }
        }
    }
    Ok(rows)
}

fn alg_name(a: BenchAlg) -> &'static str {
    match a {
        BenchAlg::Epvcbd => "epvcbd",
        BenchAlg::BoundedDegree => "bounded-degree",
        BenchAlg::ByL => "by-L",
    }
}

/// Tab-separated table with a header line; no rows gives the header only.
pub fn format_table(rows: &[BenchRow]) -> String {
    let mut out = String::from("grid\talg\tseed\tn\tm\tR\tL\tverdict\tnodes\tdepth\tfanout\twall_us\tbound\tstatus\n");
    for r in rows {
        let status = if r.ok() { "ok".to_string() } else { format!("VIOLATION: {}", r.violations.join("; ")) };
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.grid,
            alg_name(r.alg),
            r.seed,
            r.n,
            r.m,
            r.budget,
            r.threshold,
            r.verdict,
            r.nodes_expanded,
            r.max_depth,
            r.max_fanout,
            r.wall_us,
            r.bound,
            status
        );
    }
    out
}
