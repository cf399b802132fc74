//! Acceptance suite: one line per criterion, nonzero exit on any failure.
//!
//! Every criterion compares a solver with an exhaustive decider on seeded
//! random instances, and re-checks witnesses from the raw edge list.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use partialcover::bench::{run_suite, Suite};
use partialcover::fractional::solve_wpvcbfd_traced;
use partialcover::gadgets::{pendantize, reduce_mcq_to_wpvcbd, verify_reduction, McqInstance};
use partialcover::generate::{gen_bipartite, gen_bounded_degree, Draw, GenParams};
use partialcover::oracle::{oracle_fractional, oracle_pvcbm, oracle_wpvc, DEFAULT_CAP};
use partialcover::{
    bipartition, max_matching, min_vertex_cover, solve_epvcbd, solve_pvcbm, solve_wpvc_bounded_degree,
    solve_wpvc_by_l, CoverSolution, Graph, SolveReport, WpvcInstance,
};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn total_profit(g: &Graph) -> u64 {
    g.edges().iter().map(|e| e.profit.to_u64().unwrap()).sum()
}

/// Cost and profit of an integral set, straight from the edge list.
fn raw_value(g: &Graph, s: &BTreeSet<usize>) -> (u64, u64) {
    let cost = s.iter().map(|&v| g.cost(v).to_u64().unwrap()).sum();
    let profit = g
        .edges()
        .iter()
        .filter(|e| s.contains(&e.u) || s.contains(&e.v))
        .map(|e| e.profit.to_u64().unwrap())
        .sum();
    (cost, profit)
}

fn check_integral_witness(inst: &WpvcInstance, report: &SolveReport, tag: &str) -> Result<(), String> {
    if let Some(w) = &report.witness {
        ensure(w.is_integral(), || format!("{tag}: fractional witness"))?;
        let (cost, profit) = raw_value(&inst.graph, &w.integral);
        let (r, l) = (inst.budget.to_u64().unwrap(), inst.threshold.to_u64().unwrap());
        ensure(cost <= r && profit >= l, || format!("{tag}: witness cost {cost} profit {profit} vs R={r} L={l}"))?;
    }
    Ok(())
}

fn tally(yes: usize, total: usize) -> String {
    format!("{total}/{total} agree ({yes} yes, {} no)", total - yes)
}

fn params(draw: &mut Draw, n: usize, m: usize, max_cost: u64, max_profit: u64, max_r: u64) -> GenParams {
    let budget = draw.between(0, max_r);
    GenParams { n, m, max_cost, max_profit, budget, threshold: 0 }
}

fn with_threshold(mut inst: WpvcInstance, draw: &mut Draw, cap: u64) -> WpvcInstance {
    let total = total_profit(&inst.graph);
    inst.threshold = BigUint::from(draw.between(0, total.min(cap) + 1));
    inst
}

fn unit_cost_bipartite() -> Check {
    let started = Instant::now();
    let mut draw = Draw::new(1);
    let mut yes = 0;
    for i in 0..500u64 {
        let n = draw.between(2, 12) as usize;
        let max_m = n.div_ceil(2) * (n / 2);
        let m = draw.between(0, max_m as u64) as usize;
        let p = params(&mut draw, n, m, 1, 4, 5);
        let inst = with_threshold(gen_bipartite(&p, 1000 + i).unwrap(), &mut draw, 40);
        let got = solve_epvcbd(&inst).map_err(|e| format!("instance {i}: {e}"))?;
        let want = oracle_wpvc(&inst, DEFAULT_CAP).unwrap();
        ensure(got.verdict == want.verdict, || format!("instance {i}: solver {} oracle {}", got.verdict, want.verdict))?;
        check_integral_witness(&inst, &got, &format!("instance {i}"))?;
        yes += usize::from(got.verdict.is_yes());
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}, limit 60s"))?;
    Ok(format!("{}, {:.2}s", tally(yes, 500), elapsed.as_secs_f64()))
}

fn bounded_degree() -> Check {
    let mut draw = Draw::new(2);
    let mut yes = 0;
    let d = 3;
    for i in 0..500u64 {
        let n = draw.between(2, 12) as usize;
        let m = draw.between(0, (n * d / 2) as u64) as usize;
        let p = params(&mut draw, n, m, 3, 4, 6);
        // Greedy placement can get stuck near n*d/2 edges; back off until it fits.
        let inst = (0..=m)
            .rev()
            .find_map(|m| gen_bounded_degree(&GenParams { m, ..p.clone() }, d, 2000 + i).ok())
            .ok_or(format!("instance {i}: no graph generated"))?;
        let inst = with_threshold(inst, &mut draw, 30);
        let got = solve_wpvc_bounded_degree(&inst, d).map_err(|e| format!("instance {i}: {e}"))?;
        let want = oracle_wpvc(&inst, DEFAULT_CAP).unwrap();
        ensure(got.verdict == want.verdict, || format!("instance {i}: solver {} oracle {}", got.verdict, want.verdict))?;
        check_integral_witness(&inst, &got, &format!("instance {i}"))?;
        let r = inst.budget.to_usize().unwrap();
        ensure(got.max_depth <= r, || format!("instance {i}: depth {} > R = {r}", got.max_depth))?;
        ensure(got.max_fanout <= (d + 1) * r, || format!("instance {i}: fan-out {} > (d+1)R", got.max_fanout))?;
        yes += usize::from(got.verdict.is_yes());
    }
    Ok(format!("{}, depth <= R and fan-out <= (d+1)R on every run", tally(yes, 500)))
}

fn by_threshold() -> Check {
    let mut draw = Draw::new(3);
    let mut yes = 0;
    for i in 0..500u64 {
        let n = draw.between(2, 11) as usize;
        let m = draw.between(0, (n * (n - 1) / 2) as u64) as usize;
        let p = params(&mut draw, n, m, 3, 3, 6);
        let mut inst = gen_bounded_degree(&p, n, 3000 + i).map_err(|e| e.to_string())?;
        let l = draw.between(1, 8);
        inst.threshold = BigUint::from(l);
        let got = solve_wpvc_by_l(&inst).map_err(|e| format!("instance {i}: {e}"))?;
        let want = oracle_wpvc(&inst, DEFAULT_CAP).unwrap();
        ensure(got.verdict == want.verdict, || format!("instance {i}: solver {} oracle {}", got.verdict, want.verdict))?;
        check_integral_witness(&inst, &got, &format!("instance {i}"))?;
        let l = l as usize;
        ensure(got.max_depth < 2 * l, || format!("instance {i}: depth {} >= 2L", got.max_depth))?;
        ensure(got.max_fanout < l * l, || format!("instance {i}: fan-out {} >= L^2", got.max_fanout))?;
        yes += usize::from(got.verdict.is_yes());
    }
    Ok(format!("{}, depth < 2L and fan-out < L^2 on every run", tally(yes, 500)))
}

fn q(x: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x.clone()))
}

/// Cost and profit of a possibly fractional solution, from the edge list.
fn fractional_value(g: &Graph, w: &CoverSolution) -> (BigRational, BigRational) {
    let mut cost: BigRational = w.integral.iter().map(|&v| q(g.cost(v))).sum();
    let mut profit = BigRational::zero();
    for e in g.edges() {
        if w.integral.contains(&e.u) || w.integral.contains(&e.v) {
            profit += q(&e.profit);
        } else if let Some((f, a)) = &w.fractional {
            if *f == e.u || *f == e.v {
                profit += a * q(&e.profit);
            }
        }
    }
    if let Some((f, a)) = &w.fractional {
        cost += a * q(g.cost(*f));
    }
    (cost, profit)
}

fn fractional() -> Check {
    let mut draw = Draw::new(4);
    let (mut yes, mut fractional_yes, mut swaps) = (0, 0, 0);
    for i in 0..300u64 {
        let n = draw.between(2, 8) as usize;
        let max_m = n.div_ceil(2) * (n / 2);
        let m = draw.between(0, max_m as u64) as usize;
        let p = params(&mut draw, n, m, 3, 4, 4);
        let inst = with_threshold(gen_bipartite(&p, 4000 + i).unwrap(), &mut draw, 40);
        let (got, steps) = solve_wpvcbfd_traced(&inst).map_err(|e| format!("instance {i}: {e}"))?;
        let want = oracle_fractional(&inst, DEFAULT_CAP, true).unwrap();
        ensure(got.verdict == want.verdict, || format!("instance {i}: solver {} oracle {}", got.verdict, want.verdict))?;
        for s in &steps {
            ensure(s.profit_after >= s.profit_before, || format!("instance {i}: a rebalancing move lost profit"))?;
        }
        swaps += steps.len();
        if let Some(w) = &got.witness {
            let (cost, profit) = fractional_value(&inst.graph, w);
            ensure(cost == w.cost && profit == w.profit, || format!("instance {i}: misreported value"))?;
            ensure(cost <= q(&inst.budget) && profit >= q(&inst.threshold), || {
                format!("instance {i}: cost {cost} profit {profit}")
            })?;
            yes += 1;
            fractional_yes += usize::from(!w.is_integral());
        }
    }
    Ok(format!("{}, {fractional_yes} witnesses use a fraction, {swaps} rebalancing moves", tally(yes, 300)))
}

fn matching_solver() -> Check {
    let mut draw = Draw::new(5);
    let mut yes = 0;
    for i in 0..300u64 {
        let n = draw.between(2, 12) as usize;
        let max_m = n.div_ceil(2) * (n / 2);
        let m = draw.between(0, max_m as u64) as usize;
        let g = gen_bipartite(&GenParams::unit(n, m, 0, 0), 5000 + i).unwrap().graph;
        let k1 = draw.between(0, 4) as usize;
        let k2 = draw.between(0, m as u64) as usize;
        let k3 = draw.between(0, k1 as u64 + 1) as usize;
        let got = solve_pvcbm(&g, k1, k2, k3).map_err(|e| format!("instance {i}: {e}"))?;
        let want = oracle_pvcbm(&g, k1, k2, k3, DEFAULT_CAP).unwrap();
        ensure(got.verdict == want.verdict, || format!("instance {i}: solver {} oracle {}", got.verdict, want.verdict))?;
        if let Some(w) = &got.witness {
            let covered: BTreeSet<usize> = (0..g.m())
                .filter(|&e| w.integral.contains(&g.edge(e).u) || w.integral.contains(&g.edge(e).v))
                .collect();
            let m = got.matching.as_ref().ok_or(format!("instance {i}: no matching"))?;
            let mut ends = BTreeSet::new();
            let disjoint = m.edges.iter().all(|&e| ends.insert(g.edge(e).u) && ends.insert(g.edge(e).v));
            ensure(
                w.integral.len() <= k1
                    && covered.len() >= k2
                    && m.size() >= k3
                    && disjoint
                    && m.edges.iter().all(|e| covered.contains(e)),
                || format!("instance {i}: witness fails the re-check"),
            )?;
            yes += 1;
        }
    }
    Ok(tally(yes, 300))
}

fn expected_budgets(k: u32, n: u128) -> (u128, u128) {
    let r: u128 = (1..=2 * k).map(|i| 1u128 << i).sum();
    let l: u128 = (1..=2 * k).map(|i| (1u128 << i) * (n + 1) + 5u128.pow(i)).sum();
    (r, l)
}

fn reduction_instances() -> Vec<McqInstance> {
    let mut out = Vec::new();
    let mut draw = Draw::new(6);
    let configs: &[&[usize]] = &[&[1, 1], &[1, 2], &[2, 2], &[1, 1, 1], &[1, 1, 2], &[1, 2, 2], &[2, 2, 2]];
    for sizes in configs {
        let k = sizes.len();
        let color: Vec<usize> = sizes.iter().enumerate().flat_map(|(c, &s)| std::iter::repeat_n(c + 1, s)).collect();
        let n = color.len();
        let cross: Vec<(usize, usize)> =
            (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| color[u] != color[v]).collect();
        let masks: Vec<u64> = if cross.len() <= 8 {
            (0..1u64 << cross.len()).collect()
        } else {
            (0..200).map(|_| draw.below(1 << cross.len())).collect()
        };
        for mask in masks {
            let edges: Vec<(usize, usize)> =
                cross.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            out.push(McqInstance::new(k, color.clone(), &edges).unwrap());
        }
    }
    out
}

fn reduction() -> Check {
    let instances = reduction_instances();
    let mut yes = 0;
    for (i, mcq) in instances.iter().enumerate() {
        let check = verify_reduction(mcq, true, DEFAULT_CAP).map_err(|e| format!("instance {i}: {e}"))?;
        ensure(check.equivalent(), || format!("instance {i}: {check:?}"))?;
        ensure(check.pendant_yes == Some(check.reduced_yes), || format!("instance {i}: pendants changed the verdict"))?;
        let out = reduce_mcq_to_wpvcbd(mcq).unwrap();
        let (r, l) = expected_budgets(mcq.k() as u32, mcq.n() as u128);
        ensure(out.instance.budget == BigUint::from(r) && out.instance.threshold == BigUint::from(l), || {
            format!("instance {i}: R={} L={}", out.instance.budget, out.instance.threshold)
        })?;
        let p = pendantize(&out).unwrap();
        ensure(p.instance.budget == out.instance.budget && p.instance.threshold == out.instance.threshold, || {
            format!("instance {i}: pendants changed R or L")
        })?;
        yes += usize::from(check.reduced_yes);
    }
    ensure(instances.len() >= 200, || format!("only {} instances", instances.len()))?;
    Ok(format!("{}, budgets exact, pendant verdicts preserved", tally(yes, instances.len())))
}

fn konig() -> Check {
    fn brute(g: &Graph, e: usize, used: &mut Vec<bool>) -> usize {
        if e == g.m() {
            return 0;
        }
        let skip = brute(g, e + 1, used);
        let (u, v) = (g.edge(e).u, g.edge(e).v);
        if used[u] || used[v] {
            return skip;
        }
        used[u] = true;
        used[v] = true;
        let take = 1 + brute(g, e + 1, used);
        used[u] = false;
        used[v] = false;
        skip.max(take)
    }
    let mut draw = Draw::new(7);
    for i in 0..500u64 {
        let n = draw.between(1, 14) as usize;
        let max_m = n.div_ceil(2) * (n / 2);
        let m = draw.between(0, max_m as u64) as usize;
        let g = gen_bipartite(&GenParams::unit(n, m, 0, 0), 7000 + i).unwrap().graph;
        let bp = bipartition(&g).map_err(|e| e.to_string())?;
        let mm = max_matching(&g, &bp);
        let nu = brute(&g, 0, &mut vec![false; n]);
        ensure(mm.is_valid_for(&g) && mm.size() == nu, || format!("graph {i}: matching {} vs brute {nu}", mm.size()))?;
        let cover = min_vertex_cover(&g, &bp, &mm);
        let all: Vec<usize> = (0..g.m()).collect();
        ensure(cover.size() == nu && cover.covers(&g, all.iter()), || format!("graph {i}: cover of size {}", cover.size()))?;
    }
    Ok("500/500 graphs: matching size equals brute force, cover has size ν and covers every edge".into())
}

fn bench_bounds() -> Check {
    let rows = run_suite(&Suite::default_suite()).map_err(|e| e.to_string())?;
    let bad: Vec<_> = rows.iter().filter(|r| !r.ok()).collect();
    ensure(!rows.is_empty(), || "default suite produced no rows".into())?;
    ensure(bad.is_empty(), || format!("{} rows exceed their bounds, first: {:?}", bad.len(), bad[0]))?;
    Ok(format!("{} rows within their node-count and depth bounds", rows.len()))
}

fn worked_example() -> Check {
    let mcq = McqInstance::new(2, vec![1, 2], &[(0, 1)]).unwrap();
    let out = reduce_mcq_to_wpvcbd(&mcq).unwrap();
    let g = &out.instance.graph;
    let costs: Vec<u64> = g.costs().iter().map(|c| c.to_u64().unwrap()).collect();
    let profits: Vec<u64> = g.edges().iter().map(|e| e.profit.to_u64().unwrap()).collect();
    ensure(costs == [2, 4, 8, 16, 32, 32], || format!("costs {costs:?}"))?;
    ensure(profits == [11, 37, 149, 673], || format!("z-edge profits {profits:?}"))?;
    ensure(out.instance.budget == BigUint::from(30u32), || format!("R = {}", out.instance.budget))?;
    ensure(out.instance.threshold == BigUint::from(870u32), || format!("L = {}", out.instance.threshold))?;
    Ok("costs (2,4,8,16,32,32), z-edge profits (11,37,149,673), R=30, L=870".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("unit-cost bipartite solver vs oracle", unit_cost_bipartite),
        ("bounded-degree solver vs oracle", bounded_degree),
        ("threshold-parameterized solver vs oracle", by_threshold),
        ("fractional solver vs fractional oracle", fractional),
        ("matching-constrained solver vs oracle", matching_solver),
        ("clique reduction equivalence", reduction),
        ("Hopcroft-Karp and Konig cover", konig),
        ("benchmark bound conformance", bench_bounds),
        ("worked gadget example", worked_example),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = started.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS criterion {} ({name}): {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {} ({name}): {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
