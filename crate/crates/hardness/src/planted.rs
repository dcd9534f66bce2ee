//! Bi-regular Label Cover instances, optionally with a planted labeling
//! that satisfies every edge.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use subexp_core::exact::LabelCoverInstance;

use crate::error::{parameter, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PlantedLcParams {
    pub a_count: usize,
    pub b_count: usize,
    /// Edges per B-vertex.
    pub degree: usize,
    pub sigma_a: usize,
    pub sigma_b: usize,
    pub satisfiable: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlantedLc {
    pub instance: LabelCoverInstance,
    /// The labeling covering every edge, when one was planted.
    pub planted: Option<(Vec<usize>, Vec<usize>)>,
}

/// Edge `k` joins B-vertex `k / degree` to A-vertex `perm[k mod a_count]`,
/// so each B-vertex sees `degree` distinct A-vertices and every A-vertex
/// has degree `b_count * degree / a_count`.
pub fn gen_planted_lc(p: &PlantedLcParams, seed: u64) -> Result<PlantedLc> {
    if p.a_count == 0 || p.b_count == 0 || p.degree == 0 || p.sigma_a == 0 || p.sigma_b == 0 {
        return Err(parameter("label cover sizes must be positive"));
    }
    if p.degree > p.a_count || !(p.b_count * p.degree).is_multiple_of(p.a_count) {
        return Err(parameter(format!(
            "no bi-regular graph with {} A-vertices, {} B-vertices and B-degree {}",
            p.a_count, p.b_count, p.degree
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..p.a_count).collect();
    perm.shuffle(&mut rng);
    let edges: Vec<(usize, usize)> = (0..p.b_count * p.degree)
        .map(|k| (perm[k % p.a_count], k / p.degree))
        .collect();
    let planted = p.satisfiable.then(|| {
        let a: Vec<usize> = (0..p.a_count)
            .map(|_| rng.gen_range(0..p.sigma_a))
            .collect();
        let b: Vec<usize> = (0..p.b_count)
            .map(|_| rng.gen_range(0..p.sigma_b))
            .collect();
        (a, b)
    });
    let projections = edges
        .iter()
        .map(|&(a, b)| {
            let mut proj: Vec<usize> = (0..p.sigma_a)
                .map(|_| rng.gen_range(0..p.sigma_b))
                .collect();
            if let Some((la, lb)) = &planted {
                proj[la[a]] = lb[b];
            }
            proj
        })
        .collect();
    let instance = LabelCoverInstance::new(
        p.a_count,
        p.b_count,
        p.sigma_a,
        p.sigma_b,
        edges,
        projections,
    )?;
    Ok(PlantedLc { instance, planted })
}
