use std::path::PathBuf;
use std::time::Instant;

use num_rational::Ratio;
use rayon::prelude::*;
use subexp_core::approx::{ratio_bound, ApproxConfig};
use subexp_core::{Cost, Rational};

use crate::config::{ExperimentConfig, Source};
use crate::error::{read_file, BenchError, Result};
use crate::generate::{gen_hardness, gen_random_instance};
use crate::problem::{approx_solve, exact_solve, verify, Instance};
use crate::report::{ReportRow, Status};

/// Instances of a batch in canonical order; per-instance load failures are kept.
pub fn load_instances(cfg: &ExperimentConfig) -> Result<Vec<(String, Result<Instance>)>> {
    Ok(match &cfg.source {
        Source::Files(pattern) => {
            let mut paths: Vec<PathBuf> = glob::glob(pattern)
                .map_err(|e| BenchError::Input(format!("bad pattern {pattern:?}: {e}")))?
                .filter_map(std::result::Result::ok)
                .collect();
            paths.sort();
            paths
                .into_iter()
                .map(|p| {
                    let inst =
                        read_file(&p).and_then(|t| Instance::parse(&t).map_err(|e| e.in_file(&p)));
                    let inst = inst.and_then(|i| {
                        if i.kind() == cfg.problem {
                            Ok(i)
                        } else {
                            Err(BenchError::Input(format!(
                                "{} holds a {} instance",
                                p.display(),
                                i.kind()
                            )))
                        }
                    });
                    (p.display().to_string(), inst)
                })
                .collect()
        }
        Source::Random { params, seeds } => seeds
            .iter()
            .map(|&s| {
                (
                    format!("random-{}-{s}", cfg.problem),
                    gen_random_instance(cfg.problem, params, s),
                )
            })
            .collect(),
        Source::Hardness { params, seeds } => seeds
            .iter()
            .map(|&s| {
                let inst =
                    gen_hardness(params, s).map(|b| Instance::SetCover(b.reduction.instance));
                (format!("hardness-{s}"), inst)
            })
            .collect(),
    })
}

fn status_of(e: &BenchError) -> Status {
    match e.exit_code() {
        1 => Status::Infeasible,
        2 => Status::Refused,
        4 => Status::Violation,
        _ => Status::Invalid,
    }
}

/// `(1 - alpha) ln max(2, targets)`.
pub fn row_bound(targets: usize, alpha: Rational) -> Rational {
    ratio_bound(targets.max(2) as u64, alpha)
}

fn rows_for(cfg: &ExperimentConfig, id: &str, inst: &Result<Instance>) -> Vec<ReportRow> {
    let inst = match inst {
        Ok(i) => i,
        Err(e) => {
            return cfg
                .alphas
                .iter()
                .map(|&alpha| ReportRow {
                    instance: id.to_string(),
                    problem: cfg.problem,
                    n: 0,
                    m_or_k: 0,
                    alpha,
                    subset_size: 0,
                    approx_cost: None,
                    exact_cost: None,
                    ratio: None,
                    bound: Ratio::from_integer(0),
                    rounds: 0,
                    capped: false,
                    work: 0,
                    wall_ms: None,
                    status: status_of(e),
                })
                .collect()
        }
    };
    let exact: Option<Cost> = cfg
        .exact
        .then(|| exact_solve(inst, &cfg.exact_caps).ok().map(|s| s.cost()))
        .flatten();
    cfg.alphas
        .iter()
        .map(|&alpha| {
            let approx_cfg = ApproxConfig {
                alpha,
                ..cfg.approx.clone()
            };
            let mut row = ReportRow {
                instance: id.to_string(),
                problem: inst.kind(),
                n: inst.n(),
                m_or_k: inst.m_or_k(),
                alpha,
                subset_size: approx_cfg.subset_size(inst.targets()),
                approx_cost: None,
                exact_cost: None,
                ratio: None,
                bound: row_bound(inst.targets(), alpha),
                rounds: 0,
                capped: false,
                work: 0,
                wall_ms: None,
                status: Status::Ok,
            };
            let start = Instant::now();
            let result = approx_solve(inst, &approx_cfg);
            let elapsed = start.elapsed();
            match result {
                Err(e) => {
                    row.status = status_of(&e);
                }
                Ok((sol, trace)) => {
                    row.approx_cost = Some(sol.cost());
                    row.rounds = trace.rounds.len();
                    row.capped = trace.capped;
                    row.work = trace.work;
                    if cfg.timing {
                        row.wall_ms = Some(elapsed.as_secs_f64() * 1e3);
                    }
                    if verify(inst, &sol.to_file()).is_err() {
                        row.status = Status::Violation;
                    }
                    if let Some(opt) = exact {
                        row.exact_cost = Some(opt);
                        row.ratio = Some(if opt == Cost::ZERO {
                            if sol.cost() == Cost::ZERO {
                                Ratio::from_integer(1)
                            } else {
                                row.status = Status::Violation;
                                Ratio::from_integer(i64::MAX)
                            }
                        } else {
                            sol.cost().ratio_to(opt)
                        });
                        if row.ratio < Some(Ratio::from_integer(1)) {
                            row.status = Status::Violation;
                        }
                    }
                }
            }
            row
        })
        .collect()
}

/// One row per `(instance, alpha)`, in instance order then alpha order.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ReportRow>> {
    cfg.validate()?;
    let instances = load_instances(cfg)?;
    let run = || -> Vec<ReportRow> {
        instances
            .par_iter()
            .map(|(id, inst)| rows_for(cfg, id, inst))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    };
    match cfg.threads {
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| BenchError::Invariant(format!("thread pool: {e}")))?;
            Ok(pool.install(run))
        }
        None => Ok(run()),
    }
}
