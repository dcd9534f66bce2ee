//! Subexponential-time approximation for Directed Steiner Tree and Set Cover,
//! trading running time `2^(k^alpha log n)` for ratio `(1 - alpha) ln k`.
//!
//! Each round guesses `s = ceil(k^alpha)` of the uncovered terminals, finds
//! the cheapest tree spanning them from every possible root, and keeps the
//! tree of least cost per newly covered terminal. Once few terminals remain,
//! the rest are solved exactly.

mod dst;
mod setcover;

use num_rational::Ratio;
use num_traits::{One, Zero};

pub use dst::dst_approx;
pub use setcover::{greedy_setcover, setcover_approx};

use crate::cost::{Cost, Rational};
use crate::error::{Error, Result};
use crate::instances::VertexId;

/// Default work budget: bound on `C(k, s) * 3^s` for one run.
pub const DEFAULT_WORK_BUDGET: u128 = 1 << 36;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxConfig {
    /// Exponent of the guessed subset size, in `[0, 1]`.
    pub alpha: Rational,
    /// Final exact phase starts once at most `final_phase_factor * s` targets remain.
    pub final_phase_factor: Rational,
    /// Hard cap on the size of the final exact phase.
    pub terminal_cap_final: usize,
    /// Carried into reports; the algorithms themselves are deterministic.
    pub seed: u64,
    pub work_budget: u128,
}

impl Default for ApproxConfig {
    fn default() -> Self {
        ApproxConfig {
            alpha: Ratio::new(1, 2),
            final_phase_factor: Ratio::new(8389, 1000),
            terminal_cap_final: 20,
            seed: 0,
            work_budget: DEFAULT_WORK_BUDGET,
        }
    }
}

impl ApproxConfig {
    pub fn with_alpha(alpha: Rational) -> Result<Self> {
        let cfg = ApproxConfig {
            alpha,
            ..Default::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha < Rational::zero() || self.alpha > Rational::one() {
            return Err(Error::Parameter(format!(
                "alpha {} is outside [0, 1]",
                self.alpha
            )));
        }
        if self.final_phase_factor < Rational::one() {
            return Err(Error::Parameter(format!(
                "final phase factor {} is below 1",
                self.final_phase_factor
            )));
        }
        if !(1..=31).contains(&self.terminal_cap_final) {
            return Err(Error::Parameter(format!(
                "final phase cap {} is outside 1..=31",
                self.terminal_cap_final
            )));
        }
        Ok(())
    }

    /// `max(1, ceil(k^alpha))`.
    pub fn subset_size(&self, k: usize) -> usize {
        if k <= 1 {
            return 1;
        }
        let alpha = *self.alpha.numer() as f64 / *self.alpha.denom() as f64;
        let x = (k as f64).powf(alpha);
        // Guard against k^alpha landing a hair above an integer.
        let s = (x - 1e-9).ceil().max(1.0) as usize;
        s.min(k)
    }

    /// Largest remaining count handled by the final exact phase, and whether
    /// the hard cap (rather than the factor) decided it.
    fn final_threshold(&self, s: usize) -> (usize, bool) {
        let by_factor = (self.final_phase_factor * Ratio::from_integer(s as i64))
            .floor()
            .to_integer() as usize;
        if self.terminal_cap_final < by_factor {
            (self.terminal_cap_final, true)
        } else {
            (by_factor, false)
        }
    }
}

/// One greedy round: the chosen guess, what it cost and what it covered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Round {
    pub index: usize,
    /// Root of the round's tree; `None` for Set Cover.
    pub root: Option<VertexId>,
    /// The guessed terminals (or elements), sorted.
    pub guess: Vec<usize>,
    /// Sets chosen this round (Set Cover only).
    pub sets: Vec<usize>,
    pub tree_cost: Cost,
    /// Cost of the closure arc hooking the root onto the partial solution.
    pub connect_cost: Cost,
    pub connect_from: Option<VertexId>,
    /// Original arcs added this round (tree, then connection path).
    pub arcs: Vec<(VertexId, VertexId)>,
    /// Uncovered targets covered by this round, sorted; never empty.
    pub newly_covered: Vec<usize>,
    /// `(tree_cost + connect_cost) / |newly_covered|`.
    pub density: Rational,
}

impl Round {
    pub fn cost(&self) -> Cost {
        self.tree_cost + self.connect_cost
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinalPhase {
    pub targets: Vec<usize>,
    pub cost: Cost,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RoundTrace {
    pub subset_size: usize,
    pub rounds: Vec<Round>,
    pub final_phase: Option<FinalPhase>,
    /// Set when the final phase threshold came from the hard cap.
    pub capped: bool,
    /// Basic DP steps performed; deterministic for a given input.
    pub work: u64,
}

impl RoundTrace {
    /// Summed round costs before the final phase.
    pub fn pre_final_cost(&self) -> Cost {
        self.rounds.iter().map(Round::cost).sum()
    }

    /// Sum over rounds of density times newly covered count.
    pub fn charged_cost(&self) -> Rational {
        self.rounds
            .iter()
            .map(|r| r.density * Ratio::from_integer(r.newly_covered.len() as i64))
            .fold(Rational::zero(), |a, b| a + b)
    }
}

pub(crate) fn density(cost: Cost, covered: usize) -> Rational {
    cost.to_rational() / Ratio::from_integer(covered as i64)
}

/// Orders `(cost_a / new_a)` against `(cost_b / new_b)` without division.
pub(crate) fn cmp_density(
    cost_a: Cost,
    new_a: usize,
    cost_b: Cost,
    new_b: usize,
) -> std::cmp::Ordering {
    (cost_a.micros() as i128 * new_b as i128).cmp(&(cost_b.micros() as i128 * new_a as i128))
}

/// `(1 - alpha) * ln n`, rounded to the nearest multiple of `1e-9`.
pub fn ratio_bound(n: u64, alpha: Rational) -> Rational {
    assert!(n >= 1, "ratio bound needs n >= 1");
    let one_minus = 1.0 - *alpha.numer() as f64 / *alpha.denom() as f64;
    let x = one_minus * (n as f64).ln();
    Ratio::new((x * 1e9).round() as i64, 1_000_000_000)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(ApproxConfig::with_alpha(Ratio::new(3, 2)).is_err());
        assert!(ApproxConfig::with_alpha(Ratio::new(-1, 2)).is_err());
        assert!(ApproxConfig::with_alpha(Ratio::zero()).is_ok());
        let cfg = ApproxConfig {
            final_phase_factor: Ratio::new(1, 2),
            ..Default::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn subset_sizes() {
        let cfg = ApproxConfig::with_alpha(Ratio::new(1, 2)).unwrap();
        assert_eq!(cfg.subset_size(16), 4);
        assert_eq!(cfg.subset_size(17), 5);
        assert_eq!(cfg.subset_size(1), 1);
        assert_eq!(cfg.subset_size(0), 1);
        let zero = ApproxConfig::with_alpha(Ratio::zero()).unwrap();
        assert_eq!(zero.subset_size(100), 1);
        let one = ApproxConfig::with_alpha(Ratio::one()).unwrap();
        assert_eq!(one.subset_size(100), 100);
        let third = ApproxConfig::with_alpha(Ratio::new(1, 3)).unwrap();
        assert_eq!(third.subset_size(27), 3);
        assert_eq!(third.subset_size(64), 4);
    }

    #[test]
    fn final_threshold() {
        let cfg = ApproxConfig::default();
        assert_eq!(cfg.final_threshold(1), (8, false));
        assert_eq!(cfg.final_threshold(2), (16, false));
        assert_eq!(cfg.final_threshold(3), (20, true));
    }

    #[test]
    fn ratio_bounds() {
        assert_eq!(ratio_bound(100, Rational::one()), Rational::zero());
        assert_eq!(ratio_bound(1, Rational::zero()), Rational::zero());
        let r = ratio_bound(100, Ratio::new(1, 2));
        assert_eq!(r, Ratio::new(2_302_585_093, 1_000_000_000));
    }
}
