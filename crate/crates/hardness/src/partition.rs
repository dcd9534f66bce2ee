//! Partition systems: many balanced partitions of a small universe such
//! that no rainbow selection of few cells covers it.

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use subexp_core::subsets::{binomial, next_combination};
use subexp_core::{Error, Rational};

use crate::error::{parameter, HardnessError, Result};

/// Default cap on `sum_j C(m, j) * d^j` for the exhaustive rainbow search.
pub const DEFAULT_VERIFY_CAP: u128 = 1 << 26;
pub const DEFAULT_MAX_ATTEMPTS: usize = 1000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSystem {
    universe: usize,
    cells: usize,
    /// `partitions[i][x]` is the cell of element `x` in partition `i`.
    partitions: Vec<Vec<usize>>,
}

impl PartitionSystem {
    /// Every map must be total on `0..universe` with values below `cells`.
    pub fn new(universe: usize, cells: usize, partitions: Vec<Vec<usize>>) -> Result<Self> {
        if cells == 0 {
            return Err(parameter("a partition needs at least one cell"));
        }
        for (i, p) in partitions.iter().enumerate() {
            if p.len() != universe {
                return Err(parameter(format!(
                    "partition {i} does not cover 0..{universe}"
                )));
            }
            if let Some(&c) = p.iter().find(|&&c| c >= cells) {
                return Err(parameter(format!(
                    "partition {i} uses cell {c} outside 0..{cells}"
                )));
            }
        }
        Ok(PartitionSystem {
            universe,
            cells,
            partitions,
        })
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn partition_count(&self) -> usize {
        self.partitions.len()
    }

    pub fn partition(&self, i: usize) -> &[usize] {
        &self.partitions[i]
    }

    /// Elements of cell `c` in partition `i`, ascending.
    pub fn cell(&self, i: usize, c: usize) -> Vec<usize> {
        (0..self.universe)
            .filter(|&x| self.partitions[i][x] == c)
            .collect()
    }

    /// Cell sizes of every partition differ by at most one.
    pub fn is_balanced(&self) -> bool {
        self.partitions.iter().all(|p| {
            let mut sizes = vec![0usize; self.cells];
            for &c in p {
                sizes[c] += 1;
            }
            sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1
        })
    }
}

/// `floor(d * ln(u) * (1 - alpha))`, the rainbow size a system must resist.
pub fn rainbow_bound(u: usize, d: usize, alpha: Rational) -> usize {
    let a = *alpha.numer() as f64 / *alpha.denom() as f64;
    let x = d as f64 * (u as f64).ln() * (1.0 - a);
    (x + 1e-9).floor().max(0.0) as usize
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionVerdict {
    /// True when no rainbow selection of at most `ell` cells covers the universe.
    pub certified: bool,
    /// First covering selection as `(partition, cell)` pairs, smallest size
    /// first, then lexicographic.
    pub witness: Option<Vec<(usize, usize)>>,
}

/// Work of the exhaustive search: `sum_{j <= min(ell, m)} C(m, j) * d^j`.
pub fn rainbow_search_size(m: usize, d: usize, ell: usize) -> u128 {
    (1..=ell.min(m)).fold(0u128, |acc, j| {
        let cells = (0..j).fold(1u128, |p, _| p.saturating_mul(d as u128));
        acc.saturating_add(binomial(m, j).saturating_mul(cells))
    })
}

pub fn verify_partition_system(ps: &PartitionSystem, ell: usize) -> Result<PartitionVerdict> {
    verify_partition_system_capped(ps, ell, DEFAULT_VERIFY_CAP)
}

/// Exhaustive search for a rainbow cover: cells from distinct partitions,
/// at most `ell` of them.
pub fn verify_partition_system_capped(
    ps: &PartitionSystem,
    ell: usize,
    cap: u128,
) -> Result<PartitionVerdict> {
    let m = ps.partition_count();
    let estimate = rainbow_search_size(m, ps.cells, ell);
    if estimate > cap {
        return Err(Error::Refused {
            what: "rainbow cover search",
            estimate,
            cap,
        }
        .into());
    }
    if ps.universe == 0 {
        // The empty selection already covers an empty universe.
        return Ok(PartitionVerdict {
            certified: false,
            witness: Some(Vec::new()),
        });
    }
    let words = ps.universe.div_ceil(64);
    let masks: Vec<Vec<Vec<u64>>> = (0..m)
        .map(|i| {
            (0..ps.cells)
                .map(|c| {
                    let mut w = vec![0u64; words];
                    for x in ps.cell(i, c) {
                        w[x / 64] |= 1 << (x % 64);
                    }
                    w
                })
                .collect()
        })
        .collect();
    let full: Vec<u64> = (0..words)
        .map(|i| match ps.universe - i * 64 {
            r if r >= 64 => u64::MAX,
            r => (1u64 << r) - 1,
        })
        .collect();

    for size in 1..=ell.min(m) {
        let mut parts: Vec<usize> = (0..size).collect();
        loop {
            let mut cells = vec![0usize; size];
            loop {
                let mut acc = vec![0u64; words];
                for (&p, &c) in parts.iter().zip(&cells) {
                    for (a, b) in acc.iter_mut().zip(&masks[p][c]) {
                        *a |= b;
                    }
                }
                if acc == full {
                    return Ok(PartitionVerdict {
                        certified: false,
                        witness: Some(parts.iter().copied().zip(cells).collect()),
                    });
                }
                if !advance(&mut cells, ps.cells) {
                    break;
                }
            }
            if !next_combination(&mut parts, m) {
                break;
            }
        }
    }
    Ok(PartitionVerdict {
        certified: true,
        witness: None,
    })
}

/// Mixed-radix counter, last position fastest; false on wrap-around.
fn advance(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    Verified,
    /// Above the exhaustive-search cap; returned without a check.
    Unverified,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PartitionGenOptions {
    pub verify_cap: u128,
    pub max_attempts: usize,
    /// Refuse instead of returning an unverified system.
    pub verify_required: bool,
}

impl Default for PartitionGenOptions {
    fn default() -> Self {
        PartitionGenOptions {
            verify_cap: DEFAULT_VERIFY_CAP,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            verify_required: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedPartitionSystem {
    pub system: PartitionSystem,
    pub ell: usize,
    pub certification: Certification,
    pub attempts: usize,
}

fn balanced_partition(rng: &mut ChaCha8Rng, u: usize, d: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..u).collect();
    order.shuffle(rng);
    let mut cell = vec![0; u];
    for (pos, &x) in order.iter().enumerate() {
        cell[x] = pos % d;
    }
    cell
}

pub fn gen_partition_system(
    u: usize,
    m: usize,
    d: usize,
    alpha: Rational,
    seed: u64,
) -> Result<GeneratedPartitionSystem> {
    gen_partition_system_with(u, m, d, alpha, seed, &PartitionGenOptions::default())
}

/// Uniformly random balanced partitions, resampled until the rainbow
/// search at `rainbow_bound(u, d, alpha)` finds no cover.
pub fn gen_partition_system_with(
    u: usize,
    m: usize,
    d: usize,
    alpha: Rational,
    seed: u64,
    opts: &PartitionGenOptions,
) -> Result<GeneratedPartitionSystem> {
    if d < 2 || u < d || m == 0 {
        return Err(parameter(format!(
            "partition system needs u >= d >= 2 and m >= 1 (got u={u}, d={d}, m={m})"
        )));
    }
    if alpha < Ratio::from_integer(0) || alpha > Ratio::from_integer(1) {
        return Err(parameter(format!("alpha {alpha} is outside [0, 1]")));
    }
    let ell = rainbow_bound(u, d, alpha);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        let parts = (0..m).map(|_| balanced_partition(rng, u, d)).collect();
        PartitionSystem::new(u, d, parts).expect("balanced partitions are total")
    };
    if rainbow_search_size(m, d, ell) > opts.verify_cap {
        if opts.verify_required {
            return Err(Error::Refused {
                what: "rainbow cover search",
                estimate: rainbow_search_size(m, d, ell),
                cap: opts.verify_cap,
            }
            .into());
        }
        return Ok(GeneratedPartitionSystem {
            system: draw(&mut rng),
            ell,
            certification: Certification::Unverified,
            attempts: 1,
        });
    }
    for attempt in 1..=opts.max_attempts {
        let system = draw(&mut rng);
        if verify_partition_system_capped(&system, ell, opts.verify_cap)?.certified {
            return Ok(GeneratedPartitionSystem {
                system,
                ell,
                certification: Certification::Verified,
                attempts: attempt,
            });
        }
    }
    Err(HardnessError::RetriesExhausted {
        attempts: opts.max_attempts,
        ell,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_by_two() -> PartitionSystem {
        PartitionSystem::new(4, 2, vec![vec![0, 0, 1, 1], vec![0, 1, 0, 1]]).unwrap()
    }

    #[test]
    fn crossing_partitions_resist_two_cells() {
        let v = verify_partition_system(&two_by_two(), 2).unwrap();
        assert!(v.certified);
        assert_eq!(v.witness, None);
    }

    #[test]
    fn empty_selection_covers_nothing() {
        assert!(verify_partition_system(&two_by_two(), 0).unwrap().certified);
    }

    #[test]
    fn whole_cell_is_a_singleton_witness() {
        let ps = PartitionSystem::new(3, 2, vec![vec![0, 1, 0], vec![1, 1, 1]]).unwrap();
        let v = verify_partition_system(&ps, 2).unwrap();
        assert!(!v.certified);
        assert_eq!(v.witness, Some(vec![(1, 1)]));
    }

    #[test]
    fn singleton_cells_single_partition_is_vacuous() {
        let ps = PartitionSystem::new(3, 3, vec![vec![0, 1, 2]]).unwrap();
        assert!(verify_partition_system(&ps, 3).unwrap().certified);
    }

    #[test]
    fn identical_partitions_give_a_cover() {
        let ps = PartitionSystem::new(4, 2, vec![vec![0, 0, 1, 1], vec![1, 1, 0, 0]]).unwrap();
        let v = verify_partition_system(&ps, 2).unwrap();
        assert_eq!(v.witness, Some(vec![(0, 0), (1, 0)]));
    }

    #[test]
    fn bound_formula() {
        assert_eq!(rainbow_bound(16, 2, Ratio::new(1, 2)), 2);
        assert_eq!(rainbow_bound(8, 2, Ratio::new(1, 2)), 2);
        assert_eq!(rainbow_bound(16, 2, Ratio::from_integer(1)), 0);
    }

    #[test]
    fn generated_system_is_certified_and_balanced() {
        let g = gen_partition_system(16, 4, 2, Ratio::new(1, 2), 7).unwrap();
        assert_eq!(g.ell, 2);
        assert_eq!(g.certification, Certification::Verified);
        assert!(g.system.is_balanced());
        assert!(verify_partition_system(&g.system, 2).unwrap().certified);
        assert_eq!(
            g,
            gen_partition_system(16, 4, 2, Ratio::new(1, 2), 7).unwrap()
        );
    }

    #[test]
    fn caps_and_retries() {
        let opts = PartitionGenOptions {
            verify_cap: 1,
            verify_required: true,
            ..Default::default()
        };
        let r = gen_partition_system_with(16, 4, 2, Ratio::new(1, 2), 1, &opts);
        assert!(matches!(r, Err(HardnessError::Core(Error::Refused { .. }))));
        let opts = PartitionGenOptions {
            verify_cap: 1,
            ..Default::default()
        };
        let g = gen_partition_system_with(16, 4, 2, Ratio::new(1, 2), 1, &opts).unwrap();
        assert_eq!(g.certification, Certification::Unverified);
        // On three elements the two-element cell of one partition plus the
        // other partition's cell holding the third element always cover.
        let opts = PartitionGenOptions {
            max_attempts: 5,
            ..Default::default()
        };
        let r = gen_partition_system_with(3, 2, 2, Ratio::from_integer(0), 1, &opts);
        assert_eq!(
            r,
            Err(HardnessError::RetriesExhausted {
                attempts: 5,
                ell: 2
            })
        );
        assert!(gen_partition_system(3, 1, 4, Ratio::from_integer(0), 1).is_err());
    }
}
