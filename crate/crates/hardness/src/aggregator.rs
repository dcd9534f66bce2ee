//! Random bipartite aggregator graphs and their collision check.

use num_rational::Ratio;
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subexp_core::Rational;

use crate::error::{parameter, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AggregatorGraph {
    pub u_count: usize,
    pub v_count: usize,
    pub v_degree: usize,
    /// Target U-degree.
    pub delta: usize,
    pub eps: Rational,
    /// `adjacency[v]` holds `v_degree` distinct U-vertices, ascending.
    pub adjacency: Vec<Vec<usize>>,
}

/// Every V-vertex samples `d` distinct U-neighbours uniformly; there are
/// `ceil(u_count * delta / d)` V-vertices so U-degrees average `delta`.
pub fn gen_aggregator(
    u_count: usize,
    d: usize,
    delta: usize,
    eps: Rational,
    seed: u64,
) -> Result<AggregatorGraph> {
    if d == 0 || u_count < d || delta == 0 {
        return Err(parameter(format!(
            "aggregator needs 1 <= d <= u_count and delta >= 1 (got u_count={u_count}, d={d}, delta={delta})"
        )));
    }
    let v_count = (u_count * delta).div_ceil(d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let adjacency = (0..v_count)
        .map(|_| {
            let mut nb = sample(&mut rng, u_count, d).into_vec();
            nb.sort_unstable();
            nb
        })
        .collect();
    Ok(AggregatorGraph {
        u_count,
        v_count,
        v_degree: d,
        delta,
        eps,
        adjacency,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AggregatorCheck {
    /// V-vertices with two or more neighbours in one cell.
    pub colliding: usize,
    pub fraction: Rational,
    /// `fraction <= eps * d^2`.
    pub within_bound: bool,
    /// Cells larger than `eps * u_count`.
    pub oversize_cells: Vec<usize>,
}

/// `cell_of[x]` is the cell of U-vertex `x`.
pub fn check_aggregator(
    h: &AggregatorGraph,
    cell_of: &[usize],
    eps: Rational,
) -> Result<AggregatorCheck> {
    if cell_of.len() != h.u_count {
        return Err(parameter(format!(
            "partition covers {} vertices, aggregator has {}",
            cell_of.len(),
            h.u_count
        )));
    }
    let cells = cell_of.iter().max().map_or(0, |&c| c + 1);
    let mut sizes = vec![0usize; cells];
    for &c in cell_of {
        sizes[c] += 1;
    }
    let limit = eps * Ratio::from_integer(h.u_count as i64);
    let oversize_cells = (0..cells)
        .filter(|&c| Ratio::from_integer(sizes[c] as i64) > limit)
        .collect();
    let colliding = h
        .adjacency
        .iter()
        .filter(|nb| {
            let mut seen: Vec<usize> = nb.iter().map(|&x| cell_of[x]).collect();
            seen.sort_unstable();
            seen.windows(2).any(|w| w[0] == w[1])
        })
        .count();
    let fraction = if h.v_count == 0 {
        Ratio::from_integer(0)
    } else {
        Ratio::new(colliding as i64, h.v_count as i64)
    };
    let d = h.v_degree as i64;
    Ok(AggregatorCheck {
        colliding,
        fraction,
        within_bound: fraction <= eps * Ratio::from_integer(d * d),
        oversize_cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape() {
        let h = gen_aggregator(10, 3, 2, Ratio::new(1, 4), 9).unwrap();
        assert_eq!(h.v_count, 7);
        for nb in &h.adjacency {
            assert_eq!(nb.len(), 3);
            assert!(nb.windows(2).all(|w| w[0] < w[1]));
        }
        assert_eq!(h, gen_aggregator(10, 3, 2, Ratio::new(1, 4), 9).unwrap());
    }

    #[test]
    fn degree_one_never_collides() {
        let h = gen_aggregator(6, 1, 3, Ratio::new(1, 2), 1).unwrap();
        let c = check_aggregator(&h, &[0, 0, 0, 1, 1, 1], Ratio::new(1, 2)).unwrap();
        assert_eq!(c.fraction, Ratio::from_integer(0));
    }

    #[test]
    fn full_degree_is_forced() {
        let h = gen_aggregator(4, 4, 1, Ratio::new(1, 4), 3).unwrap();
        assert!(h.adjacency.iter().all(|nb| nb == &vec![0, 1, 2, 3]));
    }

    #[test]
    fn singletons_and_whole_universe() {
        let h = gen_aggregator(8, 2, 2, Ratio::new(1, 4), 5).unwrap();
        let single = check_aggregator(&h, &(0..8).collect::<Vec<_>>(), Ratio::new(1, 4)).unwrap();
        assert_eq!(single.fraction, Ratio::from_integer(0));
        assert!(single.oversize_cells.is_empty());
        let whole = check_aggregator(&h, &[0; 8], Ratio::new(1, 4)).unwrap();
        assert_eq!(whole.fraction, Ratio::from_integer(1));
        assert_eq!(whole.oversize_cells, vec![0]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(gen_aggregator(2, 3, 1, Ratio::new(1, 4), 0).is_err());
        assert!(gen_aggregator(2, 0, 1, Ratio::new(1, 4), 0).is_err());
        let h = gen_aggregator(4, 2, 1, Ratio::new(1, 4), 0).unwrap();
        assert!(check_aggregator(&h, &[0, 1], Ratio::new(1, 4)).is_err());
    }
}
