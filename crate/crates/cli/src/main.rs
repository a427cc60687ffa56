//! `lazycops` command-line front end.
//!
//! Results go to stdout as JSON (or to the requested file); failures print a
//! single line to stderr. Exit codes: 0 success, 1 usage or input error, 2 a
//! solver cap or search limit was hit.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lazycops::expansion::{verify_expansion, ExpansionOptions};
use lazycops::experiment::{bound_query, run_experiment, BoundBudget, ExperimentConfig, ExperimentError};
use lazycops::graph::{gen_gnp, gen_named, parse_graph, serialize_graph};
use lazycops::solver::{cop_number, solve, SolverLimits};
use lazycops::strategy::bounds::theoretical_bounds;
use lazycops::strategy::{CopSpec, GnpRegime, RobberSpec, StrategyContext, StrategyError};
use lazycops::{play, Graph, GraphError, Rules, SolveError};
use serde_json::json;

#[derive(Parser)]
#[command(name = "lazycops", version, about = "Lazy Cops and Robbers toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a graph and write it as an edge list.
    Gen {
        #[arg(long)]
        kind: String,
        /// Vertex count, side length or dimension, depending on the family.
        #[arg(long)]
        n: usize,
        /// Second size parameter (grid columns).
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        /// For `gnp`: use `p = n^-alpha`.
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide whether `k` cops win.
    Solve {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Lazy)]
        mode: Mode,
        #[arg(long)]
        k: usize,
    },
    /// Smallest winning cop count up to `kmax`.
    Copnum {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Lazy)]
        mode: Mode,
        #[arg(long)]
        kmax: usize,
    },
    /// Play one game and print its record.
    Simulate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        cops: String,
        #[arg(long)]
        robber: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 10_000)]
        max_rounds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check expansion properties on a sampled `G(n, n^-alpha)`.
    VerifyExpansion {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0.25)]
        tolerance: f64,
        /// Edge probability; defaults to `n^-alpha`.
        #[arg(long)]
        p: Option<f64>,
        /// Check this graph instead of sampling one.
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long, default_value_t = 200)]
        vertices: usize,
        #[arg(long, default_value_t = 2000)]
        pairs: usize,
        #[arg(long, default_value_t = 200)]
        edges: usize,
        #[arg(long)]
        cycle_length: Option<usize>,
    },
    /// Run a batch experiment from a JSON config.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the config's output path.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        json_out: Option<PathBuf>,
        #[arg(long)]
        threads: Option<usize>,
    },
    /// Evaluate a closed-form bound.
    Bounds {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        n: Option<f64>,
        #[arg(long)]
        g: Option<f64>,
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        constant: Option<f64>,
        #[arg(long)]
        min_degree: Option<f64>,
        #[arg(long)]
        regime: Option<GnpRegime>,
        /// Also report the rounded-up integer budget.
        #[arg(long)]
        integer: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Lazy,
    Classic,
}

impl From<Mode> for Rules {
    fn from(m: Mode) -> Rules {
        match m {
            Mode::Lazy => Rules::Lazy,
            Mode::Classic => Rules::Classic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Genus,
    Gnp,
    Hypercube,
    Domination,
}

enum Failure {
    Usage(String),
    Limit(String),
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::StateCap { .. }
            | SolveError::ClassicCap { .. }
            | SolveError::NotFound(_)
            | SolveError::DistanceOverflow => Failure::Limit(e.to_string()),
            _ => Failure::usage(e),
        }
    }
}

impl From<StrategyError> for Failure {
    fn from(e: StrategyError) -> Self {
        match e {
            StrategyError::Solve(s) => s.into(),
            other => Failure::usage(other),
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::usage(e)
    }
}

impl From<ExperimentError> for Failure {
    fn from(e: ExperimentError) -> Self {
        match e {
            ExperimentError::Strategy(s) => s.into(),
            other => Failure::usage(other),
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_graph(&text)?)
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<String, Failure> {
    serde_json::to_string(v).map_err(Failure::usage)
}

fn run(cmd: Command) -> Result<Option<String>, Failure> {
    match cmd {
        Command::Gen { kind, n, m, p, alpha, seed, out } => {
            let g = if kind == "gnp" {
                let p = match (p, alpha) {
                    (Some(p), _) => p,
                    (None, Some(a)) => (n as f64).powf(-a),
                    (None, None) => return Err(Failure::usage("gnp needs --p or --alpha")),
                };
                gen_gnp(n, p, seed)?
            } else {
                let sizes: Vec<usize> = std::iter::once(n).chain(m).collect();
                gen_named(&kind, &sizes, seed)?
            };
            let mut text = serialize_graph(&g);
            text.push('\n');
            fs::write(&out, text)
                .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", out.display())))?;
            Ok(None)
        }
        Command::Solve { graph, mode, k } => {
            let g = read_graph(&graph)?;
            let res = solve(&g, k, mode.into(), &SolverLimits::default())?;
            to_json(&res.summary()).map(Some)
        }
        Command::Copnum { graph, mode, kmax } => {
            let g = read_graph(&graph)?;
            let c = cop_number(&g, mode.into(), kmax, &SolverLimits::default())?;
            let key = match mode {
                Mode::Lazy => "c_L",
                Mode::Classic => "c",
            };
            Ok(Some(json!({ key: c }).to_string()))
        }
        Command::Simulate { graph, cops, robber, k, max_rounds, seed } => {
            let g = read_graph(&graph)?;
            let cop_spec: CopSpec = cops.parse()?;
            let robber_spec: RobberSpec = robber.parse()?;
            let ctx = StrategyContext::new(&g, k, seed);
            let mut c = ctx.cop(&cop_spec)?;
            let mut r = ctx.robber(&robber_spec)?;
            let rec = play(&g, c.as_mut(), r.as_mut(), k, max_rounds).map_err(Failure::usage)?;
            to_json(&rec).map(Some)
        }
        Command::VerifyExpansion {
            n,
            alpha,
            eps,
            seed,
            tolerance,
            p,
            graph,
            vertices,
            pairs,
            edges,
            cycle_length,
        } => {
            let g = match graph {
                Some(path) => read_graph(&path)?,
                None => gen_gnp(n, p.unwrap_or_else(|| (n as f64).powf(-alpha)), seed)?,
            };
            let opts = ExpansionOptions {
                tolerance,
                sample_vertices: vertices,
                sample_pairs: pairs,
                sample_edges: edges,
                cycle_length,
                d: None,
                seed,
            };
            let report = verify_expansion(&g, alpha, eps, &opts)?;
            to_json(&report).map(Some)
        }
        Command::Experiment { config, out, json_out, threads } => {
            let mut cfg = ExperimentConfig::load(&config)?;
            if out.is_some() {
                cfg.out = out;
            }
            if json_out.is_some() {
                cfg.json_out = json_out;
            }
            if threads.is_some() {
                cfg.threads = threads;
            }
            if cfg.out.is_none() {
                return Err(Failure::usage("experiment needs --out or an `out` field"));
            }
            let res = run_experiment(&cfg)?;
            to_json(&json!({
                "trials": res.aggregate.trials,
                "survival_rate": res.aggregate.survival_rate,
                "k": res.k,
            }))
            .map(Some)
        }
        Command::Bounds {
            which,
            n,
            g,
            alpha,
            p,
            eps,
            constant,
            min_degree,
            regime,
            integer,
        } => {
            let which = match which {
                Which::Genus => "genus",
                Which::Gnp => "gnp",
                Which::Hypercube => "hypercube",
                Which::Domination => "domination",
            };
            let query = bound_query(&BoundBudget {
                which: which.into(),
                n,
                g,
                p,
                alpha,
                eps,
                constant,
                min_degree,
                regime,
            })?;
            to_json(&theoretical_bounds(&query, integer)?).map(Some)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if !e.use_stderr() => {
            // --help and --version.
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let msg = e.to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments");
            eprintln!("{first}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(out) => {
            if let Some(text) = out {
                println!("{text}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Limit(msg)) => {
            eprintln!("limit: {msg}");
            ExitCode::from(2)
        }
    }
}
