//! Partial vertex cover with a matching constraint on bipartite graphs:
//! at most `k1` vertices covering at least `k2` edges that contain a
//! matching of size at least `k3`.
//!
//! Find the least budget `R` that still covers `k2` edges. The covered
//! subgraph `H` then has cover number `R`, hence (König) a matching of size
//! `R`. If `R < k3`, edges are added to `H` one at a time; the cover number
//! rises by at most one per edge and ends at `ν(G) >= k3`, so it passes
//! through `k3` exactly, and a minimum cover of `H` at that point is a
//! witness. In particular the answer is yes whenever the plain problem with
//! `(k1, k2)` is yes, `ν(G) >= k3` and `k3 <= k1`.

use std::time::Instant;

use crate::branching::epvcbd_search;
use crate::error::{internal, SolveError};
use crate::graph::{bipartition, max_matching, BipartiteMatcher, EdgeId, Graph, VertexId, Weight};
use crate::instance::{CoverSolution, SolveReport};
use crate::search::SearchStats;

fn stamp(mut report: SolveReport, stats: &SearchStats, started: Instant) -> SolveReport {
    report.nodes_expanded = stats.nodes_expanded;
    report.max_depth = stats.max_depth;
    report.max_fanout = stats.max_fanout;
    report.wall_time = started.elapsed();
    report
}

pub fn solve_pvcbm(g: &Graph, k1: usize, k2: usize, k3: usize) -> Result<SolveReport, SolveError> {
    let started = Instant::now();
    if !g.all_unit_costs() || !g.all_unit_profits() {
        return Err(SolveError::Variant("the matching-constrained solver needs unit costs and profits".into()));
    }
    let bp = bipartition(g)?;
    let mut stats = SearchStats::default();
    if k3 > k1 {
        return Ok(stamp(SolveReport::no(), &stats, started));
    }
    let need = Weight::from(k2);
    let (found, s) = epvcbd_search(g, &Weight::from(k1), &need)?;
    stats.absorb(&s);
    if found.is_none() {
        return Ok(stamp(SolveReport::no(), &stats, started));
    }

    let mut least = None;
    for r in 0..=k1 {
        let (found, s) = epvcbd_search(g, &Weight::from(r), &need)?;
        stats.absorb(&s);
        if let Some(sol) = found {
            least = Some((r, sol));
            break;
        }
    }
    let (r, s_star) = least.ok_or_else(|| internal(format!("no budget up to k1 = {k1} covers {k2} edges")))?;
    let h: Vec<EdgeId> = g.coverage(&s_star).map_err(|e| internal(e.to_string()))?.edges.into_iter().collect();
    let mut matcher = BipartiteMatcher::new(g, &bp, h.iter().copied());
    matcher.hopcroft_karp();

    let cover: Vec<VertexId> = if r >= k3 {
        if matcher.size() != r {
            return Err(internal(format!(
                "covered subgraph of the least budget {r} has maximum matching {}",
                matcher.size()
            )));
        }
        s_star
    } else {
        if max_matching(g, &bp).size() < k3 {
            return Ok(stamp(SolveReport::no(), &stats, started));
        }
        let mut outside: Vec<EdgeId> = (0..g.m()).filter(|&e| !matcher.contains_edge(e)).collect();
        outside.sort_by_key(|&e| g.edge(e).key());
        let mut added = 0usize;
        for e in outside {
            if matcher.size() >= k3 {
                break;
            }
            matcher.add_edge(e);
            added += 1;
            matcher.augment_once();
            if matcher.augment_once() {
                return Err(internal(format!("adding edge {e} raised the cover number by more than one")));
            }
        }
        if matcher.size() != k3 {
            return Err(internal(format!(
                "cover number {} after {added} edge additions, expected {k3}",
                matcher.size()
            )));
        }
        matcher.min_vertex_cover().vertices.into_iter().collect()
    };

    let matching = matcher.matching();
    let covered = g.coverage(&cover).map_err(|e| internal(e.to_string()))?;
    let ok = cover.len() <= k1
        && covered.edges.len() >= k2
        && matching.size() >= k3
        && matching.is_valid_for(g)
        && matching.edges.iter().all(|e| covered.edges.contains(e));
    if !ok {
        return Err(internal(format!(
            "witness {cover:?} covers {} edges with a matching of size {}",
            covered.edges.len(),
            matching.size()
        )));
    }
    let mut report = SolveReport::yes(CoverSolution::integral(g, cover));
    report.matching = Some(matching);
    Ok(stamp(report, &stats, started))
}
