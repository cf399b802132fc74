mod common;

use common::{arb_raw, brute_matching, Raw, Shape};
use num_traits::ToPrimitive;
use partialcover::format::{parse_wpvc, write_wpvc};
use partialcover::instance::Violation;
use partialcover::oracle::DEFAULT_CAP;
use partialcover::{
    bipartition, max_matching, min_vertex_cover, oracle_fractional, oracle_pvcbm, oracle_wpvc, solve_epvcbd,
    solve_pvcbm, solve_wpvc_bounded_degree, solve_wpvc_by_l, solve_wpvcbfd, Graph, SolveReport, WpvcInstance,
};
use proptest::prelude::*;

fn shape(n: std::ops::RangeInclusive<usize>, cost: std::ops::RangeInclusive<u64>, bipartite: bool) -> Shape {
    Shape { n, cost, profit: 1..=4, r: 0..=5, l: 0..=14, bipartite, density: 40 }
}

fn to_raw(inst: &WpvcInstance) -> Raw {
    let g = &inst.graph;
    Raw {
        costs: g.costs().iter().map(|c| c.to_u64().unwrap()).collect(),
        edges: g.edges().iter().map(|e| (e.u, e.v, e.profit.to_u64().unwrap())).collect(),
        r: inst.budget.to_u64().unwrap(),
        l: inst.threshold.to_u64().unwrap(),
    }
}

/// The verdict matches brute force and a yes witness really is feasible.
fn check(raw: &Raw, report: &SolveReport) -> Result<(), TestCaseError> {
    prop_assert_eq!(report.verdict.is_yes(), raw.brute());
    if let Some(w) = &report.witness {
        prop_assert!(w.is_integral());
        let mask = w.integral.iter().fold(0u32, |m, &v| m | 1 << v);
        prop_assert!(raw.cost(mask) <= raw.r);
        prop_assert!(raw.profit(mask) >= raw.l);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn coverage_is_monotone_and_marginals_bounded(raw in arb_raw(shape(1..=9, 1..=3, false)), a in any::<u32>(), b in any::<u32>()) {
        let g = raw.instance().graph;
        let n = raw.n();
        let s: Vec<usize> = (0..n).filter(|&v| a >> v & 1 == 1).collect();
        let t: Vec<usize> = (0..n).filter(|&v| (a | b) >> v & 1 == 1).collect();
        let ps = g.coverage(&s).unwrap().profit;
        let pt = g.coverage(&t).unwrap().profit;
        prop_assert!(ps <= pt);
        prop_assert_eq!(ps.to_u64().unwrap(), raw.profit(a & ((1 << n) - 1)));
        for v in 0..n {
            let mut sv = s.clone();
            if !sv.contains(&v) {
                sv.push(v);
            }
            let gain = g.coverage(&sv).unwrap().profit - &ps;
            prop_assert!(gain <= g.weighted_degree(v).unwrap());
        }
    }

    #[test]
    fn bipartition_is_valid_and_deterministic(raw in arb_raw(shape(1..=12, 1..=1, true))) {
        let g = raw.instance().graph;
        let bp = bipartition(&g).unwrap();
        prop_assert!(bp.is_valid_for(&g));
        prop_assert_eq!(bipartition(&g).unwrap(), bp);
    }

    #[test]
    fn residual_is_sound(raw in arb_raw(shape(1..=8, 0..=3, false))) {
        let inst = raw.instance();
        for v in 0..raw.n() {
            if raw.costs[v] > raw.r {
                prop_assert!(inst.residual(v).is_err());
                continue;
            }
            let res = inst.residual(v).unwrap();
            let violations = res.validate().err().unwrap_or_default();
            let mismatch = violations.iter().any(|x| matches!(x, Violation::VariantMismatch { .. }));
            prop_assert!(!mismatch);
            prop_assert_eq!(to_raw(&res).brute(), raw.brute_with(1 << v));
        }
    }

    #[test]
    fn oracle_matches_brute_force(raw in arb_raw(shape(1..=9, 0..=3, false))) {
        check(&raw, &oracle_wpvc(&raw.instance(), DEFAULT_CAP).unwrap())?;
    }

    #[test]
    fn oracle_ignores_relabeling(raw in arb_raw(shape(1..=8, 1..=3, false)), seed in any::<u64>()) {
        let n = raw.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut x = seed;
        for i in (1..n).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (x >> 33) as usize % (i + 1));
        }
        let mut costs = vec![0; n];
        for v in 0..n {
            costs[perm[v]] = raw.costs[v];
        }
        let edges = raw.edges.iter().map(|&(u, v, p)| (perm[u], perm[v], p)).collect();
        let relabeled = Raw { costs, edges, r: raw.r, l: raw.l };
        let a = oracle_wpvc(&raw.instance(), DEFAULT_CAP).unwrap();
        let b = oracle_wpvc(&relabeled.instance(), DEFAULT_CAP).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(a.witness.map(|w| w.integral.len()), b.witness.map(|w| w.integral.len()));
    }

    #[test]
    fn unit_cost_solver_matches_brute_force(raw in arb_raw(shape(1..=10, 1..=1, true))) {
        check(&raw, &solve_epvcbd(&raw.instance().bipartite()).unwrap())?;
    }

    #[test]
    fn bounded_degree_solver_matches_brute_force(raw in arb_raw(Shape { density: 25, ..shape(1..=10, 0..=3, false) })) {
        let inst = raw.instance();
        let d = inst.graph.max_degree();
        check(&raw, &solve_wpvc_bounded_degree(&inst, d).unwrap())?;
    }

    #[test]
    fn threshold_solver_matches_brute_force(raw in arb_raw(Shape { l: 0..=8, ..shape(1..=10, 0..=3, false) })) {
        check(&raw, &solve_wpvc_by_l(&raw.instance()).unwrap())?;
    }

    #[test]
    fn fractional_oracle_without_fractions_is_integral(raw in arb_raw(shape(1..=8, 0..=3, false))) {
        let inst = raw.instance();
        let a = oracle_fractional(&inst, DEFAULT_CAP, false).unwrap();
        let b = oracle_wpvc(&inst, DEFAULT_CAP).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
    }

    #[test]
    fn fractional_solver_matches_oracle(raw in arb_raw(Shape { r: 0..=4, ..shape(1..=8, 0..=3, true) })) {
        let inst = raw.instance();
        let got = solve_wpvcbfd(&inst).unwrap();
        let want = oracle_fractional(&inst, DEFAULT_CAP, true).unwrap();
        prop_assert_eq!(got.verdict, want.verdict);
        if let Some(w) = got.witness {
            prop_assert!(inst.accepts(&w));
        }
    }

    #[test]
    fn matching_solver_matches_oracle(raw in arb_raw(shape(1..=10, 1..=1, true)), k in (0usize..=4, 0usize..=10, 0usize..=4)) {
        let unit: Vec<(usize, usize)> = raw.edges.iter().map(|&(u, v, _)| (u, v)).collect();
        let g = Graph::unit(raw.n(), &unit).unwrap();
        let (k1, k2, k3) = k;
        let got = solve_pvcbm(&g, k1, k2, k3).unwrap();
        let want = oracle_pvcbm(&g, k1, k2, k3, DEFAULT_CAP).unwrap();
        prop_assert_eq!(got.verdict, want.verdict);
    }

    #[test]
    fn unit_cost_budget_probe_is_monotone(raw in arb_raw(shape(1..=10, 1..=1, true))) {
        let g = raw.instance().graph;
        let yes: Vec<bool> = (0..=5u32)
            .map(|r| solve_epvcbd(&WpvcInstance::new(g.clone(), r, raw.l)).unwrap().verdict.is_yes())
            .collect();
        prop_assert!(yes.windows(2).all(|w| !w[0] || w[1]));
    }

    #[test]
    fn konig_cover_matches_matching(raw in arb_raw(Shape { density: 35, ..shape(1..=12, 1..=1, true) })) {
        let g = raw.instance().graph;
        let bp = bipartition(&g).unwrap();
        let m = max_matching(&g, &bp);
        let pairs: Vec<(usize, usize)> = raw.edges.iter().map(|&(u, v, _)| (u, v)).collect();
        prop_assert!(m.is_valid_for(&g));
        prop_assert_eq!(m.size(), brute_matching(raw.n(), &pairs));
        let c = min_vertex_cover(&g, &bp, &m);
        prop_assert_eq!(c.size(), m.size());
        let all: Vec<usize> = (0..g.m()).collect();
        prop_assert!(c.covers(&g, all.iter()));
    }

    #[test]
    fn text_format_round_trips(raw in arb_raw(shape(1..=10, 0..=5, false))) {
        let inst = raw.instance();
        let text = write_wpvc(&inst, None, &["round trip".to_string()]);
        let back = parse_wpvc(&text, None).unwrap();
        prop_assert_eq!(&back.instance, &inst);
        prop_assert_eq!(write_wpvc(&back.instance, Some(&back.labels), &["round trip".to_string()]), text);
    }
}
