//! Label Cover transformations: re-wiring B-vertices through an aggregator
//! graph, and the reduction to Set Cover through a partition system.

use subexp_core::exact::LabelCoverInstance;
use subexp_core::instances::SetCoverInstance;
use subexp_core::Cost;

use crate::aggregator::AggregatorGraph;
use crate::error::{parameter, Result};
use crate::partition::PartitionSystem;

/// Replaces every B-vertex `b` by the pairs `(b, v)` for `v` in the
/// aggregator's V-side. The pair `(b, v)` is joined to the A-endpoints of
/// the edges into `b` indexed by `v`'s neighbours, keeping their projections.
///
/// New B-vertex `(b, v)` has id `b * v_count + v`.
pub fn agreement_transform(
    lc: &LabelCoverInstance,
    h: &AggregatorGraph,
) -> Result<LabelCoverInstance> {
    if lc.b_degree() != Some(h.u_count) {
        return Err(parameter(format!(
            "aggregator U-side has {} vertices but the B-degree is {:?}",
            h.u_count,
            lc.b_degree()
        )));
    }
    let mut edges = Vec::with_capacity(lc.b_count() * h.v_count * h.v_degree);
    let mut projections = Vec::with_capacity(edges.capacity());
    for b in 0..lc.b_count() {
        let into = lc.edges_into(b);
        for (v, nb) in h.adjacency.iter().enumerate() {
            for &u in nb {
                let e = into[u];
                edges.push((lc.edges()[e].0, b * h.v_count + v));
                projections.push(lc.projection(e).to_vec());
            }
        }
    }
    Ok(LabelCoverInstance::new(
        lc.a_count(),
        lc.b_count() * h.v_count,
        lc.sigma_a(),
        lc.sigma_b(),
        edges,
        projections,
    )?)
}

#[derive(Clone, Debug)]
pub struct LcSetCover {
    pub instance: SetCoverInstance,
    /// `provenance[s] = (a, sigma)` for set `s`.
    pub provenance: Vec<(usize, usize)>,
    pub universe_per_b: usize,
    sigma_a: usize,
}

impl LcSetCover {
    pub fn set_index(&self, a: usize, sigma: usize) -> usize {
        a * self.sigma_a + sigma
    }

    /// Element id of `(b, x)`.
    pub fn element(&self, b: usize, x: usize) -> usize {
        b * self.universe_per_b + x
    }

    /// The sets `S(a, labels[a])`, one per A-vertex.
    pub fn cover_from_labels(&self, labels: &[usize]) -> Vec<usize> {
        labels
            .iter()
            .enumerate()
            .map(|(a, &l)| self.set_index(a, l))
            .collect()
    }
}

/// Elements are pairs `(b, x)` with `x` in the partition universe. The
/// unit-cost set `S(a, sigma)` holds, for each edge `e = (a, b)` that is the
/// `i`-th edge into `b`, the pairs `{b} x cell_i(partition proj_e(sigma))`.
pub fn lc_to_setcover(lc: &LabelCoverInstance, ps: &PartitionSystem) -> Result<LcSetCover> {
    if ps.partition_count() != lc.sigma_b() {
        return Err(parameter(format!(
            "need one partition per B-label: {} partitions, {} labels",
            ps.partition_count(),
            lc.sigma_b()
        )));
    }
    if lc.b_degree() != Some(ps.cells()) {
        return Err(parameter(format!(
            "partitions have {} cells but the B-degree is {:?}",
            ps.cells(),
            lc.b_degree()
        )));
    }
    let u = ps.universe();
    let sigma_a = lc.sigma_a();
    // Position of every edge among the edges into its B-vertex.
    let mut position = vec![0usize; lc.edges().len()];
    for b in 0..lc.b_count() {
        for (i, &e) in lc.edges_into(b).iter().enumerate() {
            position[e] = i;
        }
    }
    let mut sets = vec![Vec::new(); lc.a_count() * sigma_a];
    for (e, &(a, b)) in lc.edges().iter().enumerate() {
        for sigma in 0..sigma_a {
            let part = lc.projection(e)[sigma];
            let cell = ps.cell(part, position[e]);
            sets[a * sigma_a + sigma].extend(cell.into_iter().map(|x| b * u + x));
        }
    }
    let provenance = (0..lc.a_count())
        .flat_map(|a| (0..sigma_a).map(move |s| (a, s)))
        .collect();
    let instance = SetCoverInstance::new(
        lc.b_count() * u,
        sets.into_iter().map(|s| (s, Cost::from_units(1))),
    )?;
    Ok(LcSetCover {
        instance,
        provenance,
        universe_per_b: u,
        sigma_a,
    })
}

#[cfg(test)]
mod tests {
    use num_rational::Ratio;
    use subexp_core::exact::{bruteforce_labelcover, bruteforce_setcover};

    use super::*;
    use crate::aggregator::gen_aggregator;
    use crate::planted::{gen_planted_lc, PlantedLcParams};

    fn planted(seed: u64) -> (LabelCoverInstance, Vec<usize>) {
        let p = PlantedLcParams {
            a_count: 2,
            b_count: 2,
            degree: 2,
            sigma_a: 2,
            sigma_b: 2,
            satisfiable: true,
        };
        let lc = gen_planted_lc(&p, seed).unwrap();
        (lc.instance, lc.planted.unwrap().0)
    }

    #[test]
    fn transform_sizes_and_completeness() {
        let (lc, _) = planted(3);
        let h = gen_aggregator(2, 2, 2, Ratio::new(1, 2), 1).unwrap();
        let out = agreement_transform(&lc, &h).unwrap();
        assert_eq!(out.b_count(), lc.b_count() * h.v_count);
        assert_eq!(out.b_degree(), Some(2));
        assert_eq!(out.edges().len(), lc.b_count() * h.v_count * 2);
        assert_eq!(
            bruteforce_labelcover(&out).unwrap().value,
            Ratio::from_integer(1)
        );
    }

    #[test]
    fn transform_rejects_degree_mismatch() {
        let (lc, _) = planted(3);
        let h = gen_aggregator(3, 2, 1, Ratio::new(1, 2), 1).unwrap();
        assert!(agreement_transform(&lc, &h).is_err());
    }

    #[test]
    fn reduction_shape_and_planted_cover() {
        let (lc, labels) = planted(5);
        let ps = PartitionSystem::new(4, 2, vec![vec![0, 0, 1, 1], vec![0, 1, 0, 1]]).unwrap();
        let red = lc_to_setcover(&lc, &ps).unwrap();
        assert_eq!(red.instance.universe_size(), lc.b_count() * 4);
        assert_eq!(red.instance.set_count(), lc.a_count() * lc.sigma_a());
        let cover = red.instance.cover(red.cover_from_labels(&labels)).unwrap();
        assert_eq!(cover.cost, Cost::from_units(lc.a_count() as i64));
        assert_eq!(bruteforce_setcover(&red.instance).unwrap().cost, cover.cost);
        assert_eq!(red.provenance[red.set_index(1, 0)], (1, 0));
    }

    #[test]
    fn reduction_rejects_mismatched_partitions() {
        let (lc, _) = planted(5);
        let ps = PartitionSystem::new(4, 2, vec![vec![0, 0, 1, 1]]).unwrap();
        assert!(lc_to_setcover(&lc, &ps).is_err());
        let ps = PartitionSystem::new(3, 3, vec![vec![0, 1, 2], vec![2, 1, 0]]).unwrap();
        assert!(lc_to_setcover(&lc, &ps).is_err());
    }
}
