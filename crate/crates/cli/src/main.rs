use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use subexp_bench::error::{read_file, write_file};
use subexp_bench::{
    approx_solve, exact_solve, gen_hardness, gen_random_instance, read_report, run_experiment,
    summarize, verify, write_report, BenchError, ExactCaps, ExperimentConfig, HardnessParams,
    Instance, ProblemKind, RandomParams, Result, Status,
};
use subexp_core::approx::ApproxConfig;
use subexp_core::exact::bruteforce_labelcover;
use subexp_core::instances::format::{parse_labelcover, parse_solution, write_dst, write_setcover};
use subexp_core::instances::{gst_to_dst, setcover_to_dst};
use subexp_core::{format_rational, parse_rational, Rational};
use subexp_hardness::format::{parse_partition_system, write_partition_system, Provenance};
use subexp_hardness::{corollary_universe, gst_hardness_params, lc_to_setcover, GstHardnessInputs};

#[derive(Parser)]
#[command(
    name = "subexp",
    version,
    about = "Subexponential-time Steiner tree and set cover approximation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the approximation on one instance.
    Solve(SolveArgs),
    /// Solve an instance exactly (Set Cover, Steiner or Label Cover file).
    Exact {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = subexp_core::exact::DEFAULT_TERMINAL_CAP)]
        terminal_cap: usize,
    },
    /// Generate instances.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Rewrite an instance as another problem.
    Reduce {
        #[arg(value_enum)]
        kind: ReduceKind,
        #[arg(long = "in")]
        input: PathBuf,
        /// Partition system file (lc2sc only).
        #[arg(long)]
        ps: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Check a solution file against an instance.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        solution: PathBuf,
    },
    /// Run an experiment batch and write a CSV report.
    Bench {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's output path.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Exit nonzero when any row is not ok.
        #[arg(long)]
        strict: bool,
        /// Record wall-clock times.
        #[arg(long)]
        timing: bool,
    },
    /// Parameter calculators.
    #[command(subcommand)]
    Params(ParamsCommand),
    /// Aggregate a CSV report.
    Summarize {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    problem: Option<ProblemKind>,
    #[arg(long, default_value = "1/2", value_parser = rational)]
    alpha: Rational,
    #[arg(long = "in")]
    input: PathBuf,
    /// Also solve exactly and report the ratio.
    #[arg(long)]
    exact: bool,
    /// Print the round trace as comment lines.
    #[arg(long)]
    trace: bool,
    #[arg(long, value_parser = rational)]
    final_phase_factor: Option<Rational>,
    #[arg(long)]
    terminal_cap_final: Option<usize>,
    #[arg(long)]
    work_budget: Option<u128>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random feasible instances, one file per seed.
    Random {
        #[arg(long, value_enum)]
        problem: ProblemKind,
        #[arg(long, default_value_t = 10)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        k: usize,
        #[arg(long, default_value_t = 8)]
        m: usize,
        #[arg(long, default_value_t = 2)]
        group_size: usize,
        #[arg(long, default_value_t = 25)]
        density: u32,
        #[arg(long, default_value_t = 10)]
        max_cost: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Label Cover, partition system and reduced Set Cover with provenance.
    Hardness {
        #[arg(long, default_value_t = 2)]
        a_count: usize,
        #[arg(long, default_value_t = 2)]
        b_count: usize,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, default_value_t = 2)]
        sigma_a: usize,
        #[arg(long, default_value_t = 2)]
        sigma_b: usize,
        /// Random projections instead of a planted labeling.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 8)]
        universe: usize,
        /// Sets the universe to `ceil(formula_size^(1/alpha - 1))`.
        #[arg(long)]
        formula_size: Option<u64>,
        #[arg(long, default_value = "1/2", value_parser = rational)]
        alpha: Rational,
        /// Aggregator V-degree; applies the agreement transform first.
        #[arg(long)]
        aggregator_degree: Option<usize>,
        #[arg(long, default_value_t = 2)]
        aggregator_delta: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ReduceKind {
    Sc2dst,
    Gst2dst,
    Lc2sc,
}

#[derive(Subcommand)]
enum ParamsCommand {
    /// Height, repetitions, size and gap of the Group Steiner Tree construction.
    GstHardness {
        /// Formula size; alternatively give --log2-n.
        #[arg(long)]
        n: Option<f64>,
        #[arg(long)]
        log2_n: Option<f64>,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 1.0)]
        c0: f64,
        #[arg(long, default_value_t = 1.0)]
        beta: f64,
        #[arg(long, default_value_t = 1.0)]
        gamma: f64,
        #[arg(long)]
        d: f64,
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        m: f64,
    },
    /// Partition universe size for a formula size and alpha.
    Corollary {
        #[arg(long)]
        formula_size: u64,
        #[arg(long, value_parser = rational)]
        alpha: Rational,
    },
}

fn rational(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn load_instance(path: &Path) -> Result<Instance> {
    Instance::parse(&read_file(path)?).map_err(|e| e.in_file(path))
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write_file(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| BenchError::Io {
        path: dir.to_path_buf(),
        source,
    })
}

fn solve(a: SolveArgs) -> Result<i32> {
    let inst = load_instance(&a.input)?;
    if let Some(p) = a.problem {
        if p != inst.kind() {
            return Err(BenchError::Input(format!(
                "--problem {p} but the file holds a {} instance",
                inst.kind()
            )));
        }
    }
    let mut cfg = ApproxConfig::with_alpha(a.alpha)?;
    if let Some(f) = a.final_phase_factor {
        cfg.final_phase_factor = f;
    }
    if let Some(c) = a.terminal_cap_final {
        cfg.terminal_cap_final = c;
    }
    if let Some(w) = a.work_budget {
        cfg.work_budget = w;
    }
    cfg.validate()?;
    let (sol, trace) = approx_solve(&inst, &cfg)?;
    if let Err(e) = verify(&inst, &sol.to_file()) {
        return Err(BenchError::Invariant(e.to_string()));
    }
    let mut text = String::new();
    if a.trace {
        writeln!(
            text,
            "# subset_size {} capped {} work {}",
            trace.subset_size, trace.capped, trace.work
        )
        .unwrap();
        for r in &trace.rounds {
            let guess: Vec<String> = r
                .guess
                .iter()
                .map(|g| (g + usize::from(r.root.is_some())).to_string())
                .collect();
            let newly: Vec<String> = r
                .newly_covered
                .iter()
                .map(|g| (g + usize::from(r.root.is_some())).to_string())
                .collect();
            writeln!(
                text,
                "# round {} root {} guess [{}] tree {} connect {} density {} new [{}]",
                r.index,
                r.root.map_or("-".to_string(), |v| (v + 1).to_string()),
                guess.join(" "),
                r.tree_cost,
                r.connect_cost,
                format_rational(&r.density),
                newly.join(" ")
            )
            .unwrap();
        }
        if let Some(f) = &trace.final_phase {
            writeln!(text, "# final targets {} cost {}", f.targets.len(), f.cost).unwrap();
        }
    }
    if a.exact {
        let opt = exact_solve(&inst, &ExactCaps::default())?.cost();
        let ratio = if opt.micros() == 0 {
            "1".to_string()
        } else {
            format_rational(&sol.cost().ratio_to(opt))
        };
        writeln!(text, "# exact {opt} ratio {ratio}").unwrap();
    }
    text.push_str(&sol.write());
    emit(a.out.as_deref(), &text)?;
    Ok(0)
}

fn exact(input: &Path, terminal_cap: usize) -> Result<i32> {
    let text = read_file(input)?;
    if text
        .lines()
        .any(|l| l.trim_start().starts_with("p labelcover"))
    {
        let lc = parse_labelcover(&text).map_err(|e| BenchError::from(e).in_file(input))?;
        let v = bruteforce_labelcover(&lc)?;
        let join = |v: &[usize]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        println!("value={}", format_rational(&v.value));
        println!("covered={}", v.covered);
        println!("a_labels={}", join(&v.a_labels));
        println!("b_labels={}", join(&v.b_labels));
        return Ok(0);
    }
    let inst = Instance::parse(&text).map_err(|e| e.in_file(input))?;
    let caps = ExactCaps {
        terminal_cap,
        ..Default::default()
    };
    print!("{}", exact_solve(&inst, &caps)?.write());
    Ok(0)
}

fn gen(cmd: GenCommand) -> Result<i32> {
    match cmd {
        GenCommand::Random {
            problem,
            n,
            k,
            m,
            group_size,
            density,
            max_cost,
            seed,
            count,
            out,
        } => {
            ensure_dir(&out)?;
            let params = RandomParams {
                n,
                k,
                m,
                group_size,
                density,
                max_cost,
            };
            for s in seed..seed + count {
                let inst = gen_random_instance(problem, &params, s)?;
                let ext = if problem == ProblemKind::SetCover {
                    "sc"
                } else {
                    "stp"
                };
                let path = out.join(format!("{problem}-{s}.{ext}"));
                write_file(&path, &inst.write())?;
                println!("{}", path.display());
            }
        }
        GenCommand::Hardness {
            a_count,
            b_count,
            degree,
            sigma_a,
            sigma_b,
            random,
            universe,
            formula_size,
            alpha,
            aggregator_degree,
            aggregator_delta,
            seed,
            out,
        } => {
            ensure_dir(&out)?;
            let p = HardnessParams {
                a_count,
                b_count,
                degree,
                sigma_a,
                sigma_b,
                satisfiable: !random,
                universe,
                formula_size,
                alpha,
                aggregator: aggregator_degree.map(|d| (d, aggregator_delta)),
            };
            let b = gen_hardness(&p, seed)?;
            let files = [
                (
                    format!("labelcover-{seed}.lc"),
                    subexp_core::instances::format::write_labelcover(&b.label_cover),
                ),
                (
                    format!("partition-{seed}.ps"),
                    write_partition_system(&b.partition.system),
                ),
                (
                    format!("setcover-{seed}.sc"),
                    write_setcover(&b.reduction.instance),
                ),
                (format!("setcover-{seed}.prov"), b.provenance.write()),
            ];
            for (name, text) in files {
                let path = out.join(name);
                write_file(&path, &text)?;
                println!("{}", path.display());
            }
        }
    }
    Ok(0)
}

fn reduce(kind: ReduceKind, input: &Path, ps: Option<&Path>, out: &Path) -> Result<i32> {
    match kind {
        ReduceKind::Sc2dst => match load_instance(input)? {
            Instance::SetCover(sc) => write_file(out, &write_dst(&setcover_to_dst(&sc).instance))?,
            other => {
                return Err(BenchError::Input(format!(
                    "sc2dst needs a setcover instance, got {}",
                    other.kind()
                )))
            }
        },
        ReduceKind::Gst2dst => match load_instance(input)? {
            Instance::Gst(g) => write_file(out, &write_dst(&gst_to_dst(&g).instance))?,
            other => {
                return Err(BenchError::Input(format!(
                    "gst2dst needs a gst instance, got {}",
                    other.kind()
                )))
            }
        },
        ReduceKind::Lc2sc => {
            let ps_path = ps.ok_or_else(|| BenchError::Input("lc2sc needs --ps".into()))?;
            let lc = parse_labelcover(&read_file(input)?)
                .map_err(|e| BenchError::from(e).in_file(input))?;
            let system = parse_partition_system(&read_file(ps_path)?)
                .map_err(|e| BenchError::from(e).in_file(ps_path))?;
            let red = lc_to_setcover(&lc, &system)?;
            write_file(out, &write_setcover(&red.instance))?;
            let mut prov = Provenance::new();
            prov.push("reduction", "lc2sc")
                .push("a_count", lc.a_count())
                .push("universe_per_b", red.universe_per_b);
            subexp_bench::generate::push_set_map(&mut prov, &red);
            let mut side = out.as_os_str().to_owned();
            side.push(".prov");
            write_file(Path::new(&side), &prov.write())?;
        }
    }
    Ok(0)
}

fn bench(config: &Path, out: Option<PathBuf>, strict: bool, timing: bool) -> Result<i32> {
    let mut cfg = ExperimentConfig::parse(&read_file(config)?).map_err(|e| e.in_file(config))?;
    cfg.timing |= timing;
    let rows = run_experiment(&cfg)?;
    let csv = write_report(&rows);
    match out.or(cfg.output.clone()) {
        Some(p) => write_file(&p, &csv)?,
        None => print!("{csv}"),
    }
    if strict {
        if let Some(r) = rows.iter().find(|r| r.status != Status::Ok) {
            eprintln!(
                "{}: {} at alpha {}",
                r.instance,
                r.status,
                format_rational(&r.alpha)
            );
            return Ok(r.status.exit_code());
        }
    }
    Ok(0)
}

fn params(cmd: ParamsCommand) -> Result<i32> {
    match cmd {
        ParamsCommand::GstHardness {
            n,
            log2_n,
            delta,
            c0,
            beta,
            gamma,
            d,
            sigma,
            m,
        } => {
            let log2_n = match (n, log2_n) {
                (_, Some(l)) => l,
                (Some(n), None) => n.log2(),
                (None, None) => return Err(BenchError::Input("give --n or --log2-n".into())),
            };
            let p = gst_hardness_params(&GstHardnessInputs {
                log2_n,
                delta,
                c0,
                beta,
                gamma,
                d,
                sigma,
                m,
            })?;
            println!("height={}", p.height);
            println!("ell={}", p.ell);
            println!("log2_size={}", p.log2_size);
            println!("log2_groups={}", p.log2_groups);
            println!("gap_estimate={}", p.gap_estimate);
        }
        ParamsCommand::Corollary {
            formula_size,
            alpha,
        } => {
            println!("universe={}", corollary_universe(formula_size, alpha)?);
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Solve(a) => solve(a),
        Command::Exact {
            input,
            terminal_cap,
        } => exact(&input, terminal_cap),
        Command::Gen(g) => gen(g),
        Command::Reduce {
            kind,
            input,
            ps,
            out,
        } => reduce(kind, &input, ps.as_deref(), &out),
        Command::Verify { input, solution } => {
            let inst = load_instance(&input)?;
            let sol = parse_solution(&read_file(&solution)?)
                .map_err(|e| BenchError::from(e).in_file(&solution))?;
            let cost = verify(&inst, &sol)?;
            println!("valid cost {cost}");
            Ok(0)
        }
        Command::Bench {
            config,
            out,
            strict,
            timing,
        } => bench(&config, out, strict, timing),
        Command::Params(p) => params(p),
        Command::Summarize { input } => {
            let rows = read_report(&read_file(&input)?).map_err(|e| e.in_file(&input))?;
            print!("{}", summarize(&rows));
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
