//! Exact solvers for partial vertex cover on weighted graphs: pick vertices
//! of total cost at most `R` whose incident edges carry profit at least `L`.
//!
//! - [`branching`]: bounded search trees for unit costs on bipartite graphs
//!   (parameter `R`), bounded degree (parameter `R`) and general graphs
//!   (parameter `L`).
//! - [`fractional`]: bipartite graphs with one vertex taken fractionally.
//! - [`matching_solver`]: unit weights with a matching-size constraint.
//! - [`gadgets`]: the reduction from multi-colored clique that makes the
//!   weighted bipartite problem hard for parameter `R`.
//! - [`oracle`]: brute-force deciders used as ground truth.

pub mod bench;
pub mod branching;
pub mod error;
pub mod format;
pub mod fractional;
pub mod gadgets;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod matching_solver;
pub mod oracle;
pub mod report;
mod search;

pub use branching::{solve_epvcbd, solve_wpvc_bounded_degree, solve_wpvc_by_l};
pub use error::{OracleError, SolveError};
pub use fractional::{expand, solve_wpvcbfd, SectionMap};
pub use gadgets::{pendantize, reduce_mcq_to_wpvcbd, verify_reduction, McqInstance, ReductionOutput};
pub use graph::{bipartition, max_matching, min_vertex_cover, Bipartition, Graph, Matching, VertexId, Weight};
pub use instance::{CoverSolution, SolveReport, Variant, Verdict, WpvcInstance};
pub use matching_solver::solve_pvcbm;
pub use oracle::{oracle_fractional, oracle_mcq, oracle_pvcbm, oracle_wpvc};
