//! Parameter calculator for the Group Steiner Tree hardness construction.
//! Everything is in base-2 logarithms; the exact quantities overflow.

use num_rational::Ratio;
use subexp_core::Rational;

use crate::error::{parameter, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GstHardnessInputs {
    /// `log2` of the formula size.
    pub log2_n: f64,
    pub delta: f64,
    pub c0: f64,
    pub beta: f64,
    /// Recorded only; no output depends on it.
    pub gamma: f64,
    /// Label Cover degree.
    pub d: f64,
    /// Label Cover alphabet size.
    pub sigma: f64,
    /// Label Cover side size.
    pub m: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GstHardnessParams {
    pub inputs: GstHardnessInputs,
    pub height: u64,
    pub ell: u64,
    /// `log2` of the instance size.
    pub log2_size: f64,
    /// `log2` of the number of groups.
    pub log2_groups: f64,
    pub gap_estimate: f64,
}

/// Ceiling that ignores floating-point noise just above an integer.
fn ceil(x: f64) -> f64 {
    (x - 1e-9).ceil()
}

/// Height `ceil(log2(n)^(1/delta - 1))`, repetitions
/// `ceil(c0 (log2 H + log2 log2 m + log2 log2 d))`, size
/// `ell H log2(sigma m)`, groups `ell log2 d + ell H log2 m`, and gap
/// `beta H log2(groups)`.
pub fn gst_hardness_params(p: &GstHardnessInputs) -> Result<GstHardnessParams> {
    let finite = [p.log2_n, p.delta, p.c0, p.beta, p.gamma, p.d, p.sigma, p.m];
    if finite.iter().any(|x| !x.is_finite()) {
        return Err(parameter("inputs must be finite"));
    }
    if !(p.delta > 0.0 && p.delta < 1.0) {
        return Err(parameter(format!("delta {} is outside (0, 1)", p.delta)));
    }
    if p.log2_n < 1.0 {
        return Err(parameter("n must be at least 2"));
    }
    if p.d < 2.0 || p.m < 2.0 || p.sigma < 1.0 {
        return Err(parameter("d and m must be at least 2, sigma at least 1"));
    }
    if p.c0 <= 0.0 {
        return Err(parameter("c0 must be positive"));
    }
    let height = ceil(p.log2_n.powf(1.0 / p.delta - 1.0)).max(1.0);
    let ell = ceil(p.c0 * (height.log2() + p.m.log2().log2() + p.d.log2().log2())).max(1.0);
    let log2_size = ell * height * (p.sigma * p.m).log2();
    let log2_groups = ell * p.d.log2() + ell * height * p.m.log2();
    let gap_estimate = p.beta * height * log2_groups;
    if ![height, ell, log2_size, log2_groups, gap_estimate]
        .iter()
        .all(|x| x.is_finite())
    {
        return Err(parameter("outputs overflow"));
    }
    Ok(GstHardnessParams {
        inputs: *p,
        height: height as u64,
        ell: ell as u64,
        log2_size,
        log2_groups,
        gap_estimate,
    })
}

/// Universe size `ceil(formula_size^(1/alpha - 1))` for the Set Cover preset.
pub fn corollary_universe(formula_size: u64, alpha: Rational) -> Result<u64> {
    if alpha <= Ratio::from_integer(0) || alpha > Ratio::from_integer(1) {
        return Err(parameter(format!("alpha {alpha} is outside (0, 1]")));
    }
    if formula_size == 0 {
        return Err(parameter("formula size must be positive"));
    }
    let a = *alpha.numer() as f64 / *alpha.denom() as f64;
    let u = ceil((formula_size as f64).powf(1.0 / a - 1.0));
    if !u.is_finite() || u > u64::MAX as f64 {
        return Err(parameter("universe size overflows"));
    }
    Ok(u.max(1.0) as u64)
}
