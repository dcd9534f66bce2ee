//! Random feasible instances and certified hardness bundles.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subexp_core::exact::LabelCoverInstance;
use subexp_core::instances::{DstInstance, Edge, GstInstance, SetCoverInstance, WeightedDigraph};
use subexp_core::{format_rational, Cost, Error, Rational};
use subexp_hardness::format::Provenance;
use subexp_hardness::{
    agreement_transform, corollary_universe, gen_aggregator, gen_partition_system, gen_planted_lc,
    lc_to_setcover, Certification, GeneratedPartitionSystem, LcSetCover, PlantedLcParams,
};

use crate::error::Result;
use crate::problem::{Instance, ProblemKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomParams {
    /// Vertices, or universe size for Set Cover.
    pub n: usize,
    /// Terminals (DST) or groups (GST).
    pub k: usize,
    /// Sets (Set Cover).
    pub m: usize,
    /// Vertices per group (GST).
    pub group_size: usize,
    /// Percent chance of each optional arc or membership.
    pub density: u32,
    /// Costs are integers drawn from `1..=max_cost`.
    pub max_cost: u32,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams {
            n: 10,
            k: 4,
            m: 8,
            group_size: 2,
            density: 25,
            max_cost: 10,
        }
    }
}

fn cost(rng: &mut ChaCha8Rng, max: u32) -> Cost {
    Cost::from_units(i64::from(rng.gen_range(1..=max)))
}

fn invalid(msg: String) -> Error {
    Error::Parameter(msg)
}

/// Root 0 reaches every vertex along a random spanning arborescence; each
/// other ordered pair is an arc with probability `density` percent.
fn random_graph(rng: &mut ChaCha8Rng, p: &RandomParams) -> Result<WeightedDigraph> {
    let n = p.n;
    let mut pairs = BTreeSet::new();
    let mut order: Vec<usize> = (1..n).collect();
    order.shuffle(rng);
    for (i, &v) in order.iter().enumerate() {
        let j = rng.gen_range(0..=i);
        let parent = if j == 0 { 0 } else { order[j - 1] };
        pairs.insert((parent, v));
    }
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_range(0..100) < p.density {
                pairs.insert((u, v));
            }
        }
    }
    let arcs: Vec<Edge> = pairs
        .into_iter()
        .map(|(u, v)| Edge::new(u, v, cost(rng, p.max_cost)))
        .collect();
    Ok(WeightedDigraph::new(n, arcs)?)
}

pub fn gen_random_instance(kind: ProblemKind, p: &RandomParams, seed: u64) -> Result<Instance> {
    if p.max_cost == 0 || p.density > 100 {
        return Err(invalid("max_cost must be positive and density at most 100".into()).into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        ProblemKind::SetCover => {
            if p.n > 0 && p.m == 0 {
                return Err(invalid("a nonempty universe needs at least one set".into()).into());
            }
            let mut sets = vec![BTreeSet::new(); p.m];
            for e in 0..p.n {
                sets[rng.gen_range(0..p.m)].insert(e);
                for set in sets.iter_mut() {
                    if rng.gen_range(0..100) < p.density {
                        set.insert(e);
                    }
                }
            }
            let sets: Vec<(Vec<usize>, Cost)> = sets
                .into_iter()
                .map(|s| (s.into_iter().collect(), cost(&mut rng, p.max_cost)))
                .collect();
            Ok(Instance::SetCover(SetCoverInstance::new(p.n, sets)?))
        }
        ProblemKind::Dst => {
            if p.n == 0 || p.k >= p.n {
                return Err(invalid(format!("need 0 <= k < n, got n={} k={}", p.n, p.k)).into());
            }
            let g = random_graph(&mut rng, p)?;
            let terminals: Vec<usize> = sample(&mut rng, p.n - 1, p.k)
                .into_iter()
                .map(|t| t + 1)
                .collect();
            Ok(Instance::Dst(DstInstance::new(g, 0, terminals)?))
        }
        ProblemKind::Gst => {
            if p.n == 0 || p.group_size == 0 || p.group_size > p.n {
                return Err(invalid(format!(
                    "need 1 <= group_size <= n, got n={} group_size={}",
                    p.n, p.group_size
                ))
                .into());
            }
            let g = random_graph(&mut rng, p)?;
            let groups = (0..p.k)
                .map(|_| sample(&mut rng, p.n, p.group_size).into_vec())
                .collect();
            Ok(Instance::Gst(GstInstance::new(g, 0, groups)?))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HardnessParams {
    pub a_count: usize,
    pub b_count: usize,
    /// Edges per B-vertex.
    pub degree: usize,
    pub sigma_a: usize,
    pub sigma_b: usize,
    pub satisfiable: bool,
    /// Partition-system universe; overridden by `formula_size` when set.
    pub universe: usize,
    pub formula_size: Option<u64>,
    pub alpha: Rational,
    /// `(V-degree, target U-degree)` of an aggregator applied before the reduction.
    pub aggregator: Option<(usize, usize)>,
}

impl Default for HardnessParams {
    fn default() -> Self {
        HardnessParams {
            a_count: 2,
            b_count: 2,
            degree: 2,
            sigma_a: 2,
            sigma_b: 2,
            satisfiable: true,
            universe: 8,
            formula_size: None,
            alpha: Rational::new(1, 2),
            aggregator: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct HardnessBundle {
    pub label_cover: LabelCoverInstance,
    pub planted_labels: Option<Vec<usize>>,
    pub partition: GeneratedPartitionSystem,
    pub reduction: LcSetCover,
    pub provenance: Provenance,
}

/// Planted Label Cover, optionally aggregated, reduced to Set Cover through
/// a certified partition system with one partition per B-label.
pub fn gen_hardness(p: &HardnessParams, seed: u64) -> Result<HardnessBundle> {
    let planted = gen_planted_lc(
        &PlantedLcParams {
            a_count: p.a_count,
            b_count: p.b_count,
            degree: p.degree,
            sigma_a: p.sigma_a,
            sigma_b: p.sigma_b,
            satisfiable: p.satisfiable,
        },
        seed,
    )?;
    let mut lc = planted.instance;
    if let Some((d, delta)) = p.aggregator {
        let h = gen_aggregator(p.degree, d, delta, Rational::new(1, 1), seed)?;
        lc = agreement_transform(&lc, &h)?;
    }
    let universe = match p.formula_size {
        Some(f) => corollary_universe(f, p.alpha)? as usize,
        None => p.universe,
    };
    let cells = lc.b_degree().expect("generated instances are B-regular");
    let partition = gen_partition_system(universe, p.sigma_b, cells, p.alpha, seed)?;
    let reduction = lc_to_setcover(&lc, &partition.system)?;

    let mut prov = Provenance::new();
    prov.push("generator", "hardness")
        .push("seed", seed)
        .push("a_count", p.a_count)
        .push("b_count", lc.b_count())
        .push("b_degree", cells)
        .push("sigma_a", p.sigma_a)
        .push("sigma_b", p.sigma_b)
        .push("satisfiable", p.satisfiable)
        .push("universe", universe)
        .push("alpha", format_rational(&p.alpha))
        .push("ell", partition.ell)
        .push(
            "certification",
            match partition.certification {
                Certification::Verified => "verified",
                Certification::Unverified => "unverified",
            },
        )
        .push("attempts", partition.attempts)
        .push("cover_size_if_satisfiable", p.a_count);
    if let Some((d, delta)) = p.aggregator {
        prov.push("aggregator_degree", d)
            .push("aggregator_delta", delta);
    }
    if let Some(f) = p.formula_size {
        prov.push("formula_size", f);
    }
    let planted_labels = planted.planted.map(|(a, _)| a);
    if let Some(labels) = &planted_labels {
        let joined: Vec<String> = labels.iter().map(ToString::to_string).collect();
        prov.push("planted_a_labels", joined.join(","));
    }
    push_set_map(&mut prov, &reduction);
    Ok(HardnessBundle {
        label_cover: lc,
        planted_labels,
        partition,
        reduction,
        provenance: prov,
    })
}

/// Appends `set.<index>=<a>,<sigma>` for every set of a reduction.
pub fn push_set_map(prov: &mut Provenance, red: &LcSetCover) {
    for (i, (a, s)) in red.provenance.iter().enumerate() {
        prov.push(format!("set.{i}"), format!("{a},{s}"));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use subexp_core::exact::dw_solve;

    #[test]
    fn random_instances_round_trip_and_are_feasible() {
        for seed in 0..500 {
            for kind in [ProblemKind::SetCover, ProblemKind::Dst, ProblemKind::Gst] {
                let inst = gen_random_instance(kind, &RandomParams::default(), seed).unwrap();
                let text = inst.write();
                assert_eq!(Instance::parse(&text).unwrap(), inst, "{kind} seed {seed}");
                match &inst {
                    Instance::SetCover(sc) => sc.check_feasible().unwrap(),
                    Instance::Dst(d) => d.check_feasible().unwrap(),
                    Instance::Gst(_) => {}
                }
            }
        }
    }

    #[test]
    fn zero_terminals_give_an_empty_tree() {
        let p = RandomParams {
            k: 0,
            ..Default::default()
        };
        let Instance::Dst(d) = gen_random_instance(ProblemKind::Dst, &p, 3).unwrap() else {
            panic!("expected a DST instance");
        };
        assert_eq!(dw_solve(&d).unwrap().cost, Cost::ZERO);
    }

    #[test]
    fn same_seed_same_bytes() {
        let a = gen_random_instance(ProblemKind::Gst, &RandomParams::default(), 9)
            .unwrap()
            .write();
        let b = gen_random_instance(ProblemKind::Gst, &RandomParams::default(), 9)
            .unwrap()
            .write();
        assert_eq!(a, b);
        let h1 = gen_hardness(&HardnessParams::default(), 4).unwrap();
        let h2 = gen_hardness(&HardnessParams::default(), 4).unwrap();
        assert_eq!(h1.provenance, h2.provenance);
        assert_eq!(h1.reduction.instance, h2.reduction.instance);
    }

    #[test]
    fn bad_sizes() {
        let p = RandomParams {
            k: 10,
            n: 10,
            ..Default::default()
        };
        assert!(gen_random_instance(ProblemKind::Dst, &p, 0).is_err());
        let p = RandomParams {
            m: 0,
            ..Default::default()
        };
        assert!(gen_random_instance(ProblemKind::SetCover, &p, 0).is_err());
    }

    #[test]
    fn hardness_bundle_records_the_set_map() {
        let b = gen_hardness(&HardnessParams::default(), 1).unwrap();
        assert_eq!(b.provenance.get("certification"), Some("verified"));
        assert_eq!(b.provenance.get("set.3"), Some("1,1"));
        let labels = b.planted_labels.unwrap();
        b.reduction
            .instance
            .cover(b.reduction.cover_from_labels(&labels))
            .unwrap();
        let agg = HardnessParams {
            a_count: 3,
            b_count: 3,
            degree: 3,
            aggregator: Some((2, 2)),
            ..Default::default()
        };
        let b = gen_hardness(&agg, 2).unwrap();
        assert_eq!(b.label_cover.b_degree(), Some(2));
        assert_eq!(b.label_cover.b_count(), 9);
    }
}
