use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use scatter_tsp::generate::{generate, GenParams, GeneratorKind};
use scatter_tsp::hardness::{embed, read_graph};
use scatter_tsp::io::{read_instance_with, write_instance, write_tour, ReadOptions};
use scatter_tsp::{
    brute_force_mstsp, decide_scatter_with, maximize_scatter_with, DecisionParams, LpNorm,
    Parallelism, ScatterError, Tour,
};

mod bench;

#[derive(Parser)]
#[command(name = "scatter-tsp", version, about = "Maximum scatter TSP solver and benchmark harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Approximately maximize the scatter of an instance.
    Solve(SolveArgs),
    /// Decide whether a tour of scatter at least ELL exists, up to 1-epsilon.
    Decide(DecideArgs),
    /// Write a random instance.
    Generate(GenerateArgs),
    /// Embed a cubic bipartite graph as a Hamming instance.
    Embed(EmbedArgs),
    /// Run a benchmark suite and write CSV.
    Bench(bench::BenchArgs),
    /// Solve a small instance exactly.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Instance file (JSON).
    input: PathBuf,
    /// Check the triangle inequality on load.
    #[arg(long)]
    strict_metric: bool,
    /// Run the O(n²) kernels on one thread.
    #[arg(long)]
    sequential: bool,
}

impl InputArgs {
    fn parallelism(&self) -> Parallelism {
        if self.sequential {
            Parallelism::Sequential
        } else {
            Parallelism::default()
        }
    }

    fn load(&self) -> Result<scatter_tsp::Instance, CliError> {
        let options = ReadOptions {
            strict_metric: self.strict_metric,
        };
        Ok(read_instance_with(&self.input, options)?)
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Write the tour here (JSON array).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also compute the exact optimum (n <= 16).
    #[arg(long)]
    oracle: bool,
    /// Treat witness-validation warnings as failures.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct DecideArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    ell: f64,
    #[arg(long, default_value_t = 0.1)]
    epsilon: f64,
    /// Write the witness tour here on Yes.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, default_value = "uniform")]
    kind: GeneratorKind,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
    /// Norm exponent: a real p >= 1 or "inf".
    #[arg(long, default_value = "2", value_parser = parse_norm)]
    norm: LpNorm,
    #[arg(long, default_value_t = 0.6)]
    cluster_frac: f64,
    #[arg(long, default_value_t = 0.01)]
    spread: f64,
    #[arg(long, default_value_t = 10.0)]
    far: f64,
    #[arg(long, default_value_t = 1)]
    clumps: usize,
    #[arg(long, default_value_t = 0)]
    far_clumps: usize,
}

#[derive(Args)]
struct EmbedArgs {
    /// Graph file: `n`, then one `u v` edge per line.
    #[arg(long)]
    graph: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
}

pub(crate) fn parse_norm(s: &str) -> Result<LpNorm, String> {
    let p = match s {
        "inf" | "infinity" => f64::INFINITY,
        _ => s.parse::<f64>().map_err(|e| format!("{s:?}: {e}"))?,
    };
    LpNorm::new(p).map_err(|e| e.to_string())
}

/// Failure with its exit status: 2 for bad input, 3 for a broken internal
/// guarantee.
#[derive(Debug)]
pub(crate) struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    pub(crate) fn input(message: impl Into<String>) -> Self {
        CliError { code: 2, message: message.into() }
    }

    pub(crate) fn contract(message: impl Into<String>) -> Self {
        CliError { code: 3, message: message.into() }
    }
}

impl From<ScatterError> for CliError {
    fn from(e: ScatterError) -> Self {
        if e.is_contract_violation() {
            CliError::contract(e.to_string())
        } else {
            CliError::input(e.to_string())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve(args) => solve(args),
        Command::Decide(args) => decide(args),
        Command::Generate(args) => cmd_generate(args),
        Command::Embed(args) => cmd_embed(args),
        Command::Bench(args) => bench::run(args),
        Command::Oracle(args) => oracle(args),
    }
}

fn format_tour(tour: &Tour) -> String {
    tour.order().iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// Reports a validation problem; fatal under `--strict`.
pub(crate) fn warn(strict: bool, message: String) -> Result<(), CliError> {
    if strict {
        Err(CliError::contract(message))
    } else {
        eprintln!("warning: {message}");
        Ok(())
    }
}

fn solve(args: SolveArgs) -> Result<(), CliError> {
    let instance = args.input.load()?;
    let oracle = if args.oracle {
        Some(brute_force_mstsp(&instance)?)
    } else {
        None
    };
    let best = maximize_scatter_with(&instance, args.epsilon, args.input.parallelism())?;
    let s = scatter_tsp::scatter(&instance, &best.tour)?;
    let tol = 1e-9 * best.ell_hat.max(1.0);
    if s < (1.0 - args.epsilon) * best.ell_hat - tol {
        warn(args.strict, format!("witness scatter {s} below (1-eps)*ell_hat"))?;
    }
    println!("ell_hat {}", best.ell_hat);
    println!("witness_scatter {s}");
    println!("branch {}", best.branch);
    println!("probes {}", best.probes);
    if let Some(k) = best.max_net_size {
        println!("max_net_size {k}");
    }
    if let Some(o) = &oracle {
        println!("oracle_opt {}", o.opt);
        if s > o.opt + tol || s < (1.0 - args.epsilon) * o.opt - tol {
            warn(args.strict, format!("witness scatter {s} inconsistent with optimum {}", o.opt))?;
        }
    }
    println!("tour {}", format_tour(&best.tour));
    if let Some(out) = &args.out {
        write_tour(&best.tour, out)?;
    }
    Ok(())
}

fn decide(args: DecideArgs) -> Result<(), CliError> {
    let instance = args.input.load()?;
    let params = DecisionParams::new(args.ell, args.epsilon)?;
    let out = decide_scatter_with(&instance, &params, args.input.parallelism())?;
    match (&out.witness, out.witness_scatter) {
        (Some(tour), Some(s)) => {
            if s < params.guaranteed() - 1e-9 * params.ell.max(1.0) {
                warn(args.strict, format!("witness scatter {s} below {}", params.guaranteed()))?;
            }
            println!("Yes");
            println!("branch {}", out.branch);
            println!("witness_scatter {s}");
            println!("tour {}", format_tour(tour));
            if let Some(path) = &args.out {
                write_tour(tour, path)?;
            }
        }
        _ => {
            println!("No");
            println!("branch {}", out.branch);
        }
    }
    if let Some(k) = out.net_size {
        println!("net_size {k}");
    }
    Ok(())
}

fn cmd_generate(args: GenerateArgs) -> Result<(), CliError> {
    let params = GenParams {
        norm: args.norm,
        cluster_frac: args.cluster_frac,
        spread: args.spread,
        far: args.far,
        clumps: args.clumps,
        far_clumps: args.far_clumps,
    };
    let instance = generate(args.kind, args.n, args.dim, args.seed, &params)?;
    write_instance(&instance, &args.out)?;
    Ok(())
}

fn cmd_embed(args: EmbedArgs) -> Result<(), CliError> {
    let graph = read_graph(&args.graph)?;
    let (labeling, instance) = embed(&graph)?;
    write_instance(&instance, &args.out)?;
    println!("m {}", labeling.m);
    println!("dim {}", instance.dim());
    Ok(())
}

fn oracle(args: OracleArgs) -> Result<(), CliError> {
    let instance = args.input.load()?;
    let result = brute_force_mstsp(&instance)?;
    println!("opt {}", result.opt);
    println!("tour {}", format_tour(&result.tour));
    Ok(())
}
