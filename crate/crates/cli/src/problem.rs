//! Problem-agnostic wrappers over the three instance kinds.

use std::fmt;
use std::str::FromStr;

use subexp_core::approx::{dst_approx, setcover_approx, ApproxConfig, RoundTrace};
use subexp_core::exact::{
    bruteforce_setcover_with, dw_solve_capped, SetCoverOracleConfig, DEFAULT_TERMINAL_CAP,
};
use subexp_core::instances::format::{
    parse_setcover, parse_steiner, write_cover_solution, write_dst, write_gst, write_setcover,
    write_tree_solution, SolutionFile, SteinerInstance,
};
use subexp_core::instances::{
    gst_to_dst, validate_arborescence, ArborescenceSolution, ArcSource, CoverSolution, DstInstance,
    GstInstance, SetCoverInstance, VertexId,
};
use subexp_core::Cost;

use crate::error::{BenchError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, clap::ValueEnum)]
pub enum ProblemKind {
    #[value(name = "setcover")]
    SetCover,
    Dst,
    Gst,
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProblemKind::SetCover => "setcover",
            ProblemKind::Dst => "dst",
            ProblemKind::Gst => "gst",
        })
    }
}

impl FromStr for ProblemKind {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "setcover" => Ok(ProblemKind::SetCover),
            "dst" => Ok(ProblemKind::Dst),
            "gst" => Ok(ProblemKind::Gst),
            _ => Err(BenchError::Input(format!("unknown problem {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    SetCover(SetCoverInstance),
    Dst(DstInstance),
    Gst(GstInstance),
}

impl Instance {
    /// Recognises Set Cover files by their `p setcover` header, anything
    /// else is read as a Steiner file.
    pub fn parse(text: &str) -> Result<Self> {
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#') && *l != "c" && !l.starts_with("c "));
        if first.is_some_and(|l| l.starts_with("p setcover")) {
            return Ok(Instance::SetCover(parse_setcover(text)?));
        }
        Ok(match parse_steiner(text)? {
            SteinerInstance::Dst(d) => Instance::Dst(d),
            SteinerInstance::Gst(g) => Instance::Gst(g),
        })
    }

    pub fn write(&self) -> String {
        match self {
            Instance::SetCover(sc) => write_setcover(sc),
            Instance::Dst(d) => write_dst(d),
            Instance::Gst(g) => write_gst(g),
        }
    }

    pub fn kind(&self) -> ProblemKind {
        match self {
            Instance::SetCover(_) => ProblemKind::SetCover,
            Instance::Dst(_) => ProblemKind::Dst,
            Instance::Gst(_) => ProblemKind::Gst,
        }
    }

    /// Vertices, or the universe size for Set Cover.
    pub fn n(&self) -> usize {
        match self {
            Instance::SetCover(sc) => sc.universe_size(),
            Instance::Dst(d) => d.graph().vertex_count(),
            Instance::Gst(g) => g.graph().vertex_count(),
        }
    }

    /// Sets, terminals or groups.
    pub fn m_or_k(&self) -> usize {
        match self {
            Instance::SetCover(sc) => sc.set_count(),
            Instance::Dst(d) => d.terminals().len(),
            Instance::Gst(g) => g.groups().len(),
        }
    }

    /// Number of things to cover: elements, terminals or groups.
    pub fn targets(&self) -> usize {
        match self {
            Instance::SetCover(sc) => sc.universe_size(),
            Instance::Dst(d) => d.terminals().len(),
            Instance::Gst(g) => g.groups().len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    Tree(ArborescenceSolution),
    Cover(CoverSolution),
}

impl Solution {
    pub fn cost(&self) -> Cost {
        match self {
            Solution::Tree(t) => t.cost,
            Solution::Cover(c) => c.cost,
        }
    }

    pub fn write(&self) -> String {
        match self {
            Solution::Tree(t) => write_tree_solution(t),
            Solution::Cover(c) => write_cover_solution(c),
        }
    }

    pub fn to_file(&self) -> SolutionFile {
        match self {
            Solution::Tree(t) => SolutionFile::Tree {
                root: t.root,
                arcs: t.arc_pairs(),
                cost: t.cost,
            },
            Solution::Cover(c) => SolutionFile::Cover {
                chosen: c.chosen.clone(),
                cost: c.cost,
            },
        }
    }
}

pub fn approx_solve(inst: &Instance, cfg: &ApproxConfig) -> Result<(Solution, RoundTrace)> {
    Ok(match inst {
        Instance::SetCover(sc) => {
            let (sol, trace) = setcover_approx(sc, cfg)?;
            (Solution::Cover(sol), trace)
        }
        Instance::Dst(d) => {
            let (sol, trace) = dst_approx(d, cfg)?;
            (Solution::Tree(sol), trace)
        }
        Instance::Gst(g) => {
            let red = gst_to_dst(g);
            let (sol, trace) = dst_approx(&red.instance, cfg)?;
            (Solution::Tree(red.to_gst_solution(&sol)), trace)
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactCaps {
    pub terminal_cap: usize,
    pub setcover: SetCoverOracleConfig,
}

impl Default for ExactCaps {
    fn default() -> Self {
        ExactCaps {
            terminal_cap: DEFAULT_TERMINAL_CAP,
            setcover: SetCoverOracleConfig::default(),
        }
    }
}

pub fn exact_solve(inst: &Instance, caps: &ExactCaps) -> Result<Solution> {
    Ok(match inst {
        Instance::SetCover(sc) => Solution::Cover(bruteforce_setcover_with(sc, &caps.setcover)?),
        Instance::Dst(d) => Solution::Tree(dw_solve_capped(d, caps.terminal_cap)?),
        Instance::Gst(g) => {
            let red = gst_to_dst(g);
            Solution::Tree(red.to_gst_solution(&dw_solve_capped(&red.instance, caps.terminal_cap)?))
        }
    })
}

fn check_tree(
    d: &DstInstance,
    root: VertexId,
    arcs: &[(VertexId, VertexId)],
    claimed: Cost,
) -> Result<Cost> {
    if root != d.root() {
        return Err(BenchError::InvalidSolution(format!(
            "root {} differs from the instance root {}",
            root + 1,
            d.root() + 1
        )));
    }
    let report = validate_arborescence(d, arcs, ArcSource::Original);
    if let Some(f) = report.failure {
        return Err(BenchError::InvalidSolution(f.to_string()));
    }
    if report.cost != claimed {
        return Err(BenchError::InvalidSolution(format!(
            "claimed cost {claimed} but arcs cost {}",
            report.cost
        )));
    }
    Ok(report.cost)
}

/// Validates a solution against an instance and returns its recomputed cost.
pub fn verify(inst: &Instance, sol: &SolutionFile) -> Result<Cost> {
    match (inst, sol) {
        (Instance::SetCover(sc), SolutionFile::Cover { chosen, cost }) => {
            let cover = sc
                .cover(chosen.iter().copied())
                .map_err(|e| BenchError::InvalidSolution(e.to_string()))?;
            if cover.cost != *cost {
                return Err(BenchError::InvalidSolution(format!(
                    "claimed cost {cost} but sets cost {}",
                    cover.cost
                )));
            }
            Ok(cover.cost)
        }
        (Instance::Dst(d), SolutionFile::Tree { root, arcs, cost }) => {
            check_tree(d, *root, arcs, *cost)
        }
        (Instance::Gst(g), SolutionFile::Tree { root, arcs, cost }) => {
            // Hook each group terminal onto its smallest member in the tree.
            let red = gst_to_dst(g);
            let n = g.graph().vertex_count();
            let mut in_tree = vec![false; n];
            if *root < n {
                in_tree[*root] = true;
            }
            for &(t, h) in arcs {
                for v in [t, h] {
                    if v < n {
                        in_tree[v] = true;
                    }
                }
            }
            let mut all = arcs.clone();
            for (i, group) in g.groups().iter().enumerate() {
                match group.iter().find(|&&v| in_tree[v]) {
                    Some(&v) => all.push((v, red.group_terminals[i])),
                    None => {
                        return Err(BenchError::InvalidSolution(format!(
                            "group {i} is not touched"
                        )))
                    }
                }
            }
            check_tree(&red.instance, *root, &all, *cost)
        }
        _ => Err(BenchError::InvalidSolution(
            "solution kind does not match the instance".into(),
        )),
    }
}
