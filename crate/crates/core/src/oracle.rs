//! Exhaustive deciders used as ground truth.
//!
//! Candidate sets are enumerated by increasing size, then lexicographically,
//! and the first feasible one is returned, so witnesses are canonical.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::OracleError;
use crate::gadgets::McqInstance;
use crate::graph::{bipartition, BipartiteMatcher, Graph, VertexId, Weight};
use crate::instance::{is_strict_fraction, rational, CoverSolution, SolveReport, WpvcInstance};

pub const DEFAULT_CAP: usize = 20;

/// Largest class size accepted by [`oracle_mcq`].
pub const MCQ_CLASS_CAP: usize = 8;
/// Largest number of colors accepted by [`oracle_mcq`].
pub const MCQ_COLOR_CAP: usize = 4;

/// Visits the `size`-subsets of `0..n` in lexicographic order, skipping
/// every extension of a prefix rejected by `admit`. `visit` returning `true`
/// stops the walk.
fn combinations(
    n: usize,
    size: usize,
    admit: &mut dyn FnMut(&[usize]) -> bool,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    fn rec(
        start: usize,
        n: usize,
        size: usize,
        cur: &mut Vec<usize>,
        admit: &mut dyn FnMut(&[usize]) -> bool,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == size {
            return visit(cur);
        }
        let remaining = size - cur.len();
        for i in start..=(n - remaining) {
            cur.push(i);
            if admit(cur) && rec(i + 1, n, size, cur, admit, visit) {
                return true;
            }
            cur.pop();
        }
        false
    }
    if size > n {
        return false;
    }
    rec(0, n, size, &mut Vec::with_capacity(size), admit, visit)
}

/// Precomputed coverage arithmetic over a fixed candidate list: the profit
/// of a set is the sum of weighted degrees minus the edges counted twice.
struct CandidateTable {
    ids: Vec<VertexId>,
    cost: Vec<Weight>,
    wdeg: Vec<Weight>,
    between: Vec<Vec<Option<Weight>>>,
}

impl CandidateTable {
    fn new(g: &Graph, ids: Vec<VertexId>) -> Self {
        let k = ids.len();
        let mut between = vec![vec![None; k]; k];
        for i in 0..k {
            for j in 0..k {
                if let Some(e) = g.edge_between(ids[i], ids[j]) {
                    between[i][j] = Some(g.edge(e).profit.clone());
                }
            }
        }
        CandidateTable {
            cost: ids.iter().map(|&v| g.cost(v).clone()).collect(),
            wdeg: ids.iter().map(|&v| g.weighted_degree_unchecked(v)).collect(),
            between,
            ids,
        }
    }

    fn cost(&self, set: &[usize]) -> Weight {
        set.iter().map(|&i| &self.cost[i]).sum()
    }

    fn profit(&self, set: &[usize]) -> Weight {
        let mut p: Weight = set.iter().map(|&i| &self.wdeg[i]).sum();
        for (a, &i) in set.iter().enumerate() {
            for &j in &set[a + 1..] {
                if let Some(w) = &self.between[i][j] {
                    p -= w;
                }
            }
        }
        p
    }

    fn vertices(&self, set: &[usize]) -> Vec<VertexId> {
        set.iter().map(|&i| self.ids[i]).collect()
    }
}

fn affordable(inst: &WpvcInstance) -> Vec<VertexId> {
    let g = &inst.graph;
    g.vertices().filter(|&v| *g.cost(v) <= inst.budget).collect()
}

fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<(), OracleError> {
    if size > cap {
        Err(OracleError::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}

/// Brute-force decision for weighted instances. Only vertices of cost at
/// most `R` can be part of a solution, so `cap` bounds their number.
pub fn oracle_wpvc(inst: &WpvcInstance, cap: usize) -> Result<SolveReport, OracleError> {
    let started = Instant::now();
    let cand = affordable(inst);
    check_cap("affordable vertex set", cand.len(), cap)?;
    let table = CandidateTable::new(&inst.graph, cand);
    let k = table.ids.len();
    let mut visited = 0u64;
    let mut found: Option<Vec<usize>> = None;
    for size in 0..=k {
        let mut admit = |s: &[usize]| table.cost(s) <= inst.budget;
        let mut visit = |s: &[usize]| {
            visited += 1;
            if table.profit(s) >= inst.threshold {
                found = Some(s.to_vec());
                true
            } else {
                false
            }
        };
        if combinations(k, size, &mut admit, &mut visit) {
            break;
        }
    }
    let mut report = match &found {
        Some(s) => SolveReport::yes(CoverSolution::integral(&inst.graph, table.vertices(s))),
        None => SolveReport::no(),
    };
    report.nodes_expanded = visited;
    report.max_depth = found.map_or(0, |s| s.len());
    report.wall_time = started.elapsed();
    Ok(report)
}

/// Brute-force decision when one vertex may be taken fractionally.
///
/// For an integral set `S` and an outside vertex `w`, profit grows with the
/// extent of `w`, so the best extent is `min(1, (R - c(S)) / c(w))`. Each
/// `S` is tried on its own first, then with every `w` in increasing id
/// order. With `allow_fractional == false` this is [`oracle_wpvc`].
pub fn oracle_fractional(inst: &WpvcInstance, cap: usize, allow_fractional: bool) -> Result<SolveReport, OracleError> {
    let started = Instant::now();
    let g = &inst.graph;
    check_cap("vertex set", g.n(), cap)?;
    let table = CandidateTable::new(g, affordable(inst));
    let k = table.ids.len();
    let budget = rational(&inst.budget);
    let threshold = rational(&inst.threshold);
    let mut visited = 0u64;
    let mut found: Option<CoverSolution> = None;
    for size in 0..=k {
        let mut admit = |s: &[usize]| table.cost(s) <= inst.budget;
        let mut visit = |s: &[usize]| {
            visited += 1;
            let vertices = table.vertices(s);
            if table.profit(s) >= inst.threshold {
                found = Some(CoverSolution::integral(g, vertices));
                return true;
            }
            if !allow_fractional {
                return false;
            }
            let left = &budget - rational(&table.cost(s));
            if left.is_zero() {
                return false;
            }
            for w in g.vertices().filter(|w| !vertices.contains(w)) {
                let cw = g.cost(w);
                if cw.is_zero() {
                    continue;
                }
                let extent = &left / BigRational::from_integer(BigInt::from(cw.clone()));
                if !is_strict_fraction(&extent) {
                    // Extent 1 is an integral set, visited on its own.
                    continue;
                }
                let sol = CoverSolution::evaluate(g, vertices.iter().copied(), Some((w, extent)));
                if sol.profit >= threshold {
                    found = Some(sol);
                    return true;
                }
            }
            false
        };
        if combinations(k, size, &mut admit, &mut visit) {
            break;
        }
    }
    let mut report = match found {
        Some(sol) => {
            let depth = sol.vertex_count();
            let mut r = SolveReport::yes(sol);
            r.max_depth = depth;
            r
        }
        None => SolveReport::no(),
    };
    report.nodes_expanded = visited;
    report.wall_time = started.elapsed();
    Ok(report)
}

/// Brute-force decision for the matching-constrained variant on a bipartite
/// graph with unit weights: at most `k1` vertices covering at least `k2`
/// edges whose subgraph has a matching of size at least `k3`.
pub fn oracle_pvcbm(g: &Graph, k1: usize, k2: usize, k3: usize, cap: usize) -> Result<SolveReport, OracleError> {
    let started = Instant::now();
    check_cap("vertex set", g.n(), cap)?;
    let bp = bipartition(g)?;
    let mut visited = 0u64;
    let mut found = None;
    for size in 0..=k1.min(g.n()) {
        let mut admit = |_: &[usize]| true;
        let mut visit = |s: &[usize]| {
            visited += 1;
            let covered = g.coverage(s).expect("valid ids");
            if covered.edges.len() < k2 {
                return false;
            }
            let mut matcher = BipartiteMatcher::new(g, &bp, covered.edges.iter().copied());
            matcher.hopcroft_karp();
            if matcher.size() >= k3 {
                found = Some((s.to_vec(), matcher.matching()));
                true
            } else {
                false
            }
        };
        if combinations(g.n(), size, &mut admit, &mut visit) {
            break;
        }
    }
    let mut report = match found {
        Some((s, matching)) => {
            let depth = s.len();
            let mut r = SolveReport::yes(CoverSolution::integral(g, s));
            r.matching = Some(matching);
            r.max_depth = depth;
            r
        }
        None => SolveReport::no(),
    };
    report.nodes_expanded = visited;
    report.wall_time = started.elapsed();
    Ok(report)
}

/// Brute-force multi-colored clique: tries every one-per-class tuple, classes
/// in color order and members in id order. Returns the first clique found.
pub fn oracle_mcq(inst: &McqInstance) -> Result<Option<Vec<VertexId>>, OracleError> {
    check_cap("color count", inst.k(), MCQ_COLOR_CAP)?;
    let classes = inst.classes();
    for class in &classes {
        check_cap("color class", class.len(), MCQ_CLASS_CAP)?;
    }
    fn rec(g: &Graph, classes: &[Vec<VertexId>], cur: &mut Vec<VertexId>) -> bool {
        let Some(class) = classes.get(cur.len()) else {
            return true;
        };
        for &v in class {
            if cur.iter().all(|&u| g.edge_between(u, v).is_some()) {
                cur.push(v);
                if rec(g, classes, cur) {
                    return true;
                }
                cur.pop();
            }
        }
        false
    }
    let mut cur = Vec::new();
    Ok(rec(inst.graph(), &classes, &mut cur).then_some(cur))
}
