//! Exact cost arithmetic.
//!
//! Costs are fixed-point integers counting millionths of a unit, so sums and
//! comparisons are exact and every decimal with at most six fractional digits
//! round-trips through text without loss.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{CheckedMul, Zero};

use crate::error::Error;

/// Denominator of the fixed-point cost representation.
pub const COST_SCALE: i64 = 1_000_000;

const SCALE_DIGITS: usize = 6;

/// Exact rational used for ratios, densities and parameters such as alpha.
pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cost(i64);

impl Cost {
    pub const ZERO: Cost = Cost(0);

    pub const fn from_micros(micros: i64) -> Self {
        Cost(micros)
    }

    pub const fn from_units(units: i64) -> Self {
        Cost(units * COST_SCALE)
    }

    pub const fn micros(self) -> i64 {
        self.0
    }

    pub fn checked_add(self, other: Cost) -> Option<Cost> {
        self.0.checked_add(other.0).map(Cost)
    }

    pub fn to_rational(self) -> Rational {
        Ratio::new(self.0, COST_SCALE)
    }

    /// Exact conversion; `None` when the value is negative or not a multiple of 1/COST_SCALE.
    pub fn from_rational(r: Rational) -> Option<Cost> {
        if r < Ratio::zero() {
            return None;
        }
        let scaled = r.checked_mul(&Ratio::from_integer(COST_SCALE))?;
        scaled.is_integer().then(|| Cost(scaled.to_integer()))
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / COST_SCALE as f64
    }

    /// `self / other` as an exact rational. Panics if `other` is zero.
    pub fn ratio_to(self, other: Cost) -> Rational {
        Ratio::new(self.0, other.0)
    }
}

impl Add for Cost {
    type Output = Cost;
    fn add(self, rhs: Cost) -> Cost {
        Cost(self.0 + rhs.0)
    }
}

impl AddAssign for Cost {
    fn add_assign(&mut self, rhs: Cost) {
        self.0 += rhs.0;
    }
}

impl Sub for Cost {
    type Output = Cost;
    fn sub(self, rhs: Cost) -> Cost {
        Cost(self.0 - rhs.0)
    }
}

impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, Add::add)
    }
}

impl<'a> Sum<&'a Cost> for Cost {
    fn sum<I: Iterator<Item = &'a Cost>>(iter: I) -> Cost {
        iter.copied().sum()
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        let int = abs / COST_SCALE as u64;
        let frac = abs % COST_SCALE as u64;
        if frac == 0 {
            write!(f, "{sign}{int}")
        } else {
            let digits = format!("{frac:0width$}", width = SCALE_DIGITS);
            write!(f, "{sign}{int}.{}", digits.trim_end_matches('0'))
        }
    }
}

impl FromStr for Cost {
    type Err = Error;

    /// Parses a nonnegative decimal such as `3`, `0.9` or `12.000125`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| Error::Parameter(format!("invalid cost {s:?}: {msg}"));
        let (int_part, frac_part) = match s.split_once('.') {
            Some((i, f)) => (i, f),
            None => (s, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad("empty"));
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit())
            || !frac_part.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(bad("expected a nonnegative decimal"));
        }
        if frac_part.len() > SCALE_DIGITS {
            return Err(bad("more than six fractional digits"));
        }
        let int: i64 = if int_part.is_empty() {
            0
        } else {
            int_part.parse().map_err(|_| bad("out of range"))?
        };
        let mut frac: i64 = 0;
        for b in frac_part.bytes() {
            frac = frac * 10 + i64::from(b - b'0');
        }
        for _ in frac_part.len()..SCALE_DIGITS {
            frac *= 10;
        }
        int.checked_mul(COST_SCALE)
            .and_then(|v| v.checked_add(frac))
            .map(Cost)
            .ok_or_else(|| bad("out of range"))
    }
}

/// Parses `p/q`, an integer, or a decimal into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parameter(format!("invalid rational {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().map_err(|_| bad())?;
        let den: i64 = den.trim().parse().map_err(|_| bad())?;
        if den == 0 {
            return Err(bad());
        }
        return Ok(Ratio::new(num, den));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if (int_part.is_empty() && frac_part.is_empty())
        || !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
        || frac_part.len() > 12
    {
        return Err(bad());
    }
    let den = 10i64.pow(frac_part.len() as u32);
    let int: i64 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().map_err(|_| bad())?
    };
    let frac: i64 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().map_err(|_| bad())?
    };
    let num = int
        .checked_mul(den)
        .and_then(|v| v.checked_add(frac))
        .ok_or_else(bad)?;
    Ok(Ratio::new(if neg { -num } else { num }, den))
}

/// Writes a rational as a decimal when it has a short exact expansion, else as `p/q`.
pub fn format_rational(r: &Rational) -> String {
    let mut den = *r.denom();
    let mut digits = 0usize;
    while den % 10 == 0 {
        den /= 10;
        digits += 1;
    }
    while den % 2 == 0 || den % 5 == 0 {
        if den % 2 == 0 {
            den /= 2;
        } else {
            den /= 5;
        }
        digits += 1;
    }
    if den != 1 || digits > 12 {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let scale = 10i128.pow(digits as u32);
    let scaled = *r.numer() as i128 * scale / *r.denom() as i128;
    let sign = if scaled < 0 { "-" } else { "" };
    let abs = scaled.unsigned_abs();
    let int = abs / scale as u128;
    let frac = abs % scale as u128;
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac:0width$}", width = digits)
    }
}
