mod common;

use common::*;
use num_rational::Ratio;
use proptest::prelude::*;
use rand::Rng;
use subexp_core::exact::{
    agreement_check, bruteforce_labelcover, bruteforce_setcover, dw_solve, LabelCoverInstance,
};
use subexp_core::instances::{
    gst_to_dst, setcover_to_dst, validate_arborescence, validate_solution, ArcSource, DstInstance,
    SetCoverInstance,
};
use subexp_core::Cost;

/// Include/exclude recursion over sets.
fn recursive_setcover(sc: &SetCoverInstance) -> Cost {
    fn go(sc: &SetCoverInstance, i: usize, covered: u64, full: u64) -> Option<Cost> {
        if covered == full {
            return Some(Cost::ZERO);
        }
        if i == sc.set_count() {
            return None;
        }
        let set = &sc.sets()[i];
        let mask = set.elements.iter().fold(0u64, |m, &e| m | 1 << e);
        let take = go(sc, i + 1, covered | mask, full).map(|c| c + set.cost);
        let skip = go(sc, i + 1, covered, full);
        match (take, skip) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }
    let full = (1u64 << sc.universe_size()) - 1;
    go(sc, 0, 0, full).expect("feasible")
}

/// Label Cover value by enumerating both sides.
fn labelcover_both_sides(lc: &LabelCoverInstance) -> usize {
    let a_total = lc.sigma_a().pow(lc.a_count() as u32);
    let b_total = lc.sigma_b().pow(lc.b_count() as u32);
    let mut best = 0;
    for ai in 0..a_total {
        let a: Vec<usize> = (0..lc.a_count())
            .map(|i| ai / lc.sigma_a().pow(i as u32) % lc.sigma_a())
            .collect();
        for bi in 0..b_total {
            let b: Vec<usize> = (0..lc.b_count())
                .map(|i| bi / lc.sigma_b().pow(i as u32) % lc.sigma_b())
                .collect();
            best = best.max(lc.covered_edges(&a, &b));
        }
    }
    best
}

fn random_labelcover(seed: u64) -> LabelCoverInstance {
    let mut r = rng(seed);
    let a_count = r.gen_range(1..=3);
    let b_count = r.gen_range(1..=3);
    let sigma_a = r.gen_range(1..=3);
    let sigma_b = r.gen_range(1..=3);
    let mut edges = Vec::new();
    for a in 0..a_count {
        for b in 0..b_count {
            if r.gen_bool(0.7) {
                edges.push((a, b));
            }
        }
    }
    let projections = edges
        .iter()
        .map(|_| (0..sigma_a).map(|_| r.gen_range(0..sigma_b)).collect())
        .collect();
    LabelCoverInstance::new(a_count, b_count, sigma_a, sigma_b, edges, projections).unwrap()
}

/// Arborescence check written from the definition: distinct graph arcs,
/// in-degree 0 at the root and exactly 1 elsewhere, everything reachable.
fn independent_is_arborescence(d: &DstInstance, arcs: &[(usize, usize)]) -> bool {
    let n = d.graph().vertex_count();
    let mut sorted = arcs.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != arcs.len()
        || arcs
            .iter()
            .any(|&(t, h)| d.graph().arc_cost(t, h).is_none())
    {
        return false;
    }
    let mut indeg = vec![0; n];
    for &(_, h) in arcs {
        indeg[h] += 1;
    }
    let mut verts: Vec<usize> = arcs.iter().flat_map(|&(t, h)| [t, h]).collect();
    verts.push(d.root());
    verts.sort_unstable();
    verts.dedup();
    if indeg[d.root()] != 0 || verts.iter().any(|&v| v != d.root() && indeg[v] != 1) {
        return false;
    }
    let seen = reach(n, d.root(), arcs);
    verts.iter().all(|&v| seen[v]) && d.terminals().iter().all(|&t| seen[t])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dreyfus_wagner_matches_arc_subset_search(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=6);
        let k = r.gen_range(0..n);
        let arc_count = r.gen_range(n..=12);
        let g = random_sparse_graph(&mut r, n, arc_count, 6);
        let terms = random_terminals(&mut r, n, k);
        let d = DstInstance::new(g, 0, terms.clone()).unwrap();
        let oracle = exhaustive_min(d.graph(), 0, |seen| terms.iter().all(|&t| seen[t]));
        match (dw_solve(&d), oracle) {
            (Ok(sol), Some(best)) => {
                prop_assert_eq!(sol.cost, best);
                prop_assert!(validate_solution(&d, &sol).is_valid());
            }
            (Err(e), None) => prop_assert_eq!(e.kind(), subexp_core::ErrorKind::Infeasible),
            (got, want) => prop_assert!(false, "solver {got:?} vs oracle {want:?}"),
        }
    }

    #[test]
    fn group_steiner_reduction_matches_arc_subset_search(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=6);
        let groups = r.gen_range(1..=3);
        let extra = r.gen_range(0..=5);
        let gst = random_gst(&mut r, n, groups, extra);
        let red = gst_to_dst(&gst);
        let oracle = exhaustive_min(gst.graph(), 0, |seen| {
            gst.groups().iter().all(|g| g.iter().any(|&v| seen[v]))
        });
        match (dw_solve(&red.instance), oracle) {
            (Ok(sol), Some(best)) => {
                let back = red.to_gst_solution(&sol);
                prop_assert_eq!(back.cost, best);
                let seen = reach(n, 0, &back.arc_pairs());
                prop_assert!(gst.groups().iter().all(|g| g.iter().any(|&v| seen[v])));
            }
            (Err(_), None) => {}
            (got, want) => prop_assert!(false, "solver {got:?} vs oracle {want:?}"),
        }
    }

    #[test]
    fn setcover_oracle_matches_recursion(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=8);
        let m = r.gen_range(1..=7);
        let sc = random_setcover(&mut r, n, m);
        let sol = bruteforce_setcover(&sc).unwrap();
        prop_assert_eq!(sol.cost, recursive_setcover(&sc));
        prop_assert_eq!(sc.cover(sol.chosen.clone()).unwrap().cost, sol.cost);
    }

    #[test]
    fn setcover_reduction_preserves_optimum(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(1..=7);
        let m = r.gen_range(1..=6);
        let sc = random_setcover(&mut r, n, m);
        let red = setcover_to_dst(&sc);
        let tree = dw_solve(&red.instance).unwrap();
        let decoded = red.decode(&sc, &tree).unwrap();
        let best = bruteforce_setcover(&sc).unwrap().cost;
        prop_assert_eq!(tree.cost, best);
        prop_assert_eq!(decoded.cost, best);
    }

    #[test]
    fn labelcover_oracle_matches_two_sided_enumeration(seed in any::<u64>()) {
        let lc = random_labelcover(seed);
        let v = bruteforce_labelcover(&lc).unwrap();
        let best = labelcover_both_sides(&lc);
        prop_assert_eq!(v.covered, best);
        prop_assert_eq!(lc.covered_edges(&v.a_labels, &v.b_labels), best);
        if !lc.edges().is_empty() {
            prop_assert_eq!(v.value, Ratio::new(best as i64, lc.edges().len() as i64));
        }
    }

    #[test]
    fn full_lists_agree_where_images_meet(seed in any::<u64>()) {
        // With every label listed, a B-vertex agrees iff two incident edges
        // have projection images that intersect.
        let lc = random_labelcover(seed);
        let one = agreement_check(&lc, 1).unwrap();
        let all = agreement_check(&lc, lc.sigma_a()).unwrap();
        prop_assert!(one.eps_star <= all.eps_star);
        let image = |e: usize| -> std::collections::BTreeSet<usize> { lc.projection(e).iter().copied().collect() };
        let meeting = (0..lc.b_count())
            .filter(|&b| {
                let es = lc.edges_into(b);
                es.iter().enumerate().any(|(i, &e)| es[i + 1..].iter().any(|&f| !image(e).is_disjoint(&image(f))))
            })
            .count();
        prop_assert_eq!(all.agreeing, meeting);

        let a_total = lc.sigma_a().pow(lc.a_count() as u32);
        let mut best = 0;
        for ai in 0..a_total {
            let a: Vec<usize> = (0..lc.a_count()).map(|i| ai / lc.sigma_a().pow(i as u32) % lc.sigma_a()).collect();
            let label = |e: usize| lc.projection(e)[a[lc.edges()[e].0]];
            let agreeing = (0..lc.b_count())
                .filter(|&b| {
                    let es = lc.edges_into(b);
                    es.iter().enumerate().any(|(i, &e)| es[i + 1..].iter().any(|&f| label(e) == label(f)))
                })
                .count();
            best = best.max(agreeing);
        }
        prop_assert_eq!(one.agreeing, best);
    }

    #[test]
    fn validator_agrees_with_definition(seed in any::<u64>()) {
        let mut r = rng(seed);
        let n = r.gen_range(2..=7);
        let k = r.gen_range(0..n);
        let d = random_dst(&mut r, n, k, 6);
        let mut arcs: Vec<(usize, usize)> = d
            .graph()
            .arcs()
            .iter()
            .filter(|_| r.gen_bool(0.5))
            .map(|a| a.endpoints())
            .collect();
        if r.gen_bool(0.1) {
            arcs.push((r.gen_range(0..n), r.gen_range(0..n)));
        }
        let report = validate_arborescence(&d, &arcs, ArcSource::Original);
        prop_assert_eq!(report.is_valid(), independent_is_arborescence(&d, &arcs));
    }
}
