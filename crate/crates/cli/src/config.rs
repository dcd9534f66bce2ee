//! Experiment configuration in `key=value` text.
//!
//! ```text
//! problem=dst                 # setcover | dst | gst
//! source=random               # random | files | hardness
//! alphas=0.3,0.5,1
//! seeds=0..100                # or a comma list
//! n=12
//! k=6
//! exact=true
//! ```

use std::path::PathBuf;

use num_rational::Ratio;
use subexp_core::approx::ApproxConfig;
use subexp_core::{parse_rational, Rational};

use crate::error::{BenchError, Result};
use crate::generate::{HardnessParams, RandomParams};
use crate::problem::{ExactCaps, ProblemKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    /// A glob pattern; matches are read in sorted path order.
    Files(String),
    Random {
        params: RandomParams,
        seeds: Vec<u64>,
    },
    Hardness {
        params: HardnessParams,
        seeds: Vec<u64>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub problem: ProblemKind,
    pub source: Source,
    pub alphas: Vec<Rational>,
    pub exact: bool,
    pub exact_caps: ExactCaps,
    /// Template for every solver run; its `alpha` is replaced per row.
    pub approx: ApproxConfig,
    /// Record wall-clock times; rows are then no longer byte-reproducible.
    pub timing: bool,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(problem: ProblemKind, source: Source, alphas: Vec<Rational>) -> Result<Self> {
        let cfg = ExperimentConfig {
            problem,
            source,
            alphas,
            exact: true,
            exact_caps: ExactCaps::default(),
            approx: ApproxConfig::default(),
            timing: false,
            threads: None,
            output: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let err = |m: String| {
            Err(BenchError::Config {
                line: 0,
                message: m,
            })
        };
        if self.alphas.is_empty() {
            return err("at least one alpha is required".into());
        }
        if let Some(a) = self
            .alphas
            .iter()
            .find(|a| **a < Ratio::from_integer(0) || **a > Ratio::from_integer(1))
        {
            return err(format!("alpha {a} is outside [0, 1]"));
        }
        if matches!(self.source, Source::Hardness { .. }) && self.problem != ProblemKind::SetCover {
            return err("the hardness source produces Set Cover instances only".into());
        }
        if self.threads == Some(0) {
            return err("threads must be positive".into());
        }
        self.approx.validate().map_err(|e| BenchError::Config {
            line: 0,
            message: e.to_string(),
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut problem = None;
        let mut source_kind: Option<(usize, String)> = None;
        let mut files = None;
        let mut seeds = vec![0];
        let mut random = RandomParams::default();
        let mut hard = HardnessParams::default();
        let mut alphas = None;
        let mut exact = true;
        let mut caps = ExactCaps::default();
        let mut approx = ApproxConfig::default();
        let mut timing = false;
        let mut threads = None;
        let mut output = None;

        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |m: String| BenchError::Config { line, message: m };
            let (key, value) = content
                .split_once('=')
                .map(|(k, v)| (k.trim(), v.trim()))
                .ok_or_else(|| err("expected key=value".into()))?;
            let int = || {
                value
                    .parse::<usize>()
                    .map_err(|_| err(format!("{key}: expected an integer, got {value:?}")))
            };
            let boolean = || match value {
                "true" | "yes" | "1" => Ok(true),
                "false" | "no" | "0" => Ok(false),
                _ => Err(err(format!("{key}: expected true or false, got {value:?}"))),
            };
            let rational = || parse_rational(value).map_err(|e| err(e.to_string()));
            match key {
                "problem" => {
                    problem = Some(
                        value
                            .parse::<ProblemKind>()
                            .map_err(|e| err(e.to_string()))?,
                    )
                }
                "source" => source_kind = Some((line, value.to_string())),
                "files" => files = Some(value.to_string()),
                "seeds" => seeds = parse_seeds(value).map_err(err)?,
                "alphas" => {
                    alphas = Some(
                        value
                            .split(',')
                            .map(|a| parse_rational(a).map_err(|e| err(e.to_string())))
                            .collect::<Result<Vec<_>>>()?,
                    )
                }
                "n" => random.n = int()?,
                "k" => random.k = int()?,
                "m" => random.m = int()?,
                "group_size" => random.group_size = int()?,
                "density" => random.density = int()? as u32,
                "max_cost" => random.max_cost = int()? as u32,
                "a_count" => hard.a_count = int()?,
                "b_count" => hard.b_count = int()?,
                "degree" => hard.degree = int()?,
                "sigma_a" => hard.sigma_a = int()?,
                "sigma_b" => hard.sigma_b = int()?,
                "satisfiable" => hard.satisfiable = boolean()?,
                "universe" => hard.universe = int()?,
                "formula_size" => hard.formula_size = Some(int()? as u64),
                "partition_alpha" => hard.alpha = rational()?,
                "exact" => exact = boolean()?,
                "exact_terminal_cap" => caps.terminal_cap = int()?,
                "exact_max_sets" => caps.setcover.max_sets_enumerated = int()?,
                "exact_max_universe" => caps.setcover.max_universe_dp = int()?,
                "work_budget" => {
                    approx.work_budget = value
                        .parse()
                        .map_err(|_| err(format!("bad work_budget {value:?}")))?
                }
                "final_phase_factor" => approx.final_phase_factor = rational()?,
                "terminal_cap_final" => approx.terminal_cap_final = int()?,
                "timing" => timing = boolean()?,
                "threads" => threads = Some(int()?),
                "output" => output = Some(PathBuf::from(value)),
                _ => return Err(err(format!("unknown key {key:?}"))),
            }
        }

        let problem = problem.ok_or(BenchError::Config {
            line: 0,
            message: "missing problem".into(),
        })?;
        let (sline, skind) = source_kind.ok_or(BenchError::Config {
            line: 0,
            message: "missing source".into(),
        })?;
        let source = match skind.as_str() {
            "files" => Source::Files(files.ok_or(BenchError::Config {
                line: sline,
                message: "source=files needs a files= pattern".into(),
            })?),
            "random" => Source::Random {
                params: random,
                seeds,
            },
            "hardness" => Source::Hardness {
                params: hard,
                seeds,
            },
            other => {
                return Err(BenchError::Config {
                    line: sline,
                    message: format!("unknown source {other:?}"),
                })
            }
        };
        let cfg = ExperimentConfig {
            problem,
            source,
            alphas: alphas.unwrap_or_else(|| vec![approx.alpha]),
            exact,
            exact_caps: caps,
            approx,
            timing,
            threads,
            output,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// `a..b` (half-open) or a comma list.
fn parse_seeds(value: &str) -> std::result::Result<Vec<u64>, String> {
    if let Some((a, b)) = value.split_once("..") {
        let a: u64 = a
            .trim()
            .parse()
            .map_err(|_| format!("bad seed range {value:?}"))?;
        let b: u64 = b
            .trim()
            .parse()
            .map_err(|_| format!("bad seed range {value:?}"))?;
        return Ok((a..b).collect());
    }
    value
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| format!("bad seed {s:?}")))
        .collect()
}
