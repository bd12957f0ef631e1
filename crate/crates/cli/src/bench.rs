//! Benchmark suites writing one CSV row per (instance, epsilon) cell.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use scatter_tsp::generate::{generate, GenParams, GeneratorKind};
use scatter_tsp::oracle::BRUTE_FORCE_MAX_N;
use scatter_tsp::{brute_force_mstsp, maximize_scatter, scatter, Instance};

use crate::{warn, CliError};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    /// A dozen tiny instances; seconds.
    Smoke,
    /// Uniform, clustered and grid instances up to n = 2000.
    Standard,
    /// The n = 10000 clustered instance.
    Scale,
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, value_enum, default_value = "smoke")]
    suite: Suite,
    /// CSV output path.
    #[arg(long)]
    out: PathBuf,
    /// Record the exact optimum for instances with n <= 16.
    #[arg(long)]
    oracle: bool,
    /// Report invariant violations as warnings instead of failing.
    #[arg(long)]
    lenient: bool,
    /// Worker threads for running cells concurrently.
    #[arg(long, env = "SCATTER_TSP_THREADS")]
    threads: Option<usize>,
}

/// One CSV row. Field order is the header order.
#[derive(Clone, Debug, Serialize)]
pub struct BenchRecord {
    pub instance_id: String,
    pub n: usize,
    pub dim: usize,
    pub metric: String,
    #[serde(serialize_with = "decimal")]
    pub epsilon: f64,
    #[serde(serialize_with = "decimal")]
    pub ell_hat: f64,
    #[serde(serialize_with = "decimal")]
    pub witness_scatter: f64,
    #[serde(serialize_with = "opt_decimal")]
    pub oracle_opt: Option<f64>,
    pub branch: String,
    pub net_size: Option<usize>,
    #[serde(serialize_with = "decimal")]
    pub runtime_ms: f64,
    pub seed: u64,
}

/// Plain positional notation; `Display` for f64 never uses exponents.
fn decimal<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn opt_decimal<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => decimal(v, s),
        None => s.serialize_str(""),
    }
}

impl BenchRecord {
    /// Violated invariants, if any.
    pub fn violations(&self) -> Vec<String> {
        let tol = 1e-9 * self.ell_hat.max(1.0);
        let mut out = Vec::new();
        if self.witness_scatter < (1.0 - self.epsilon) * self.ell_hat - tol {
            out.push(format!(
                "{}: witness scatter {} below (1-eps)*ell_hat = {}",
                self.instance_id,
                self.witness_scatter,
                (1.0 - self.epsilon) * self.ell_hat
            ));
        }
        if let Some(opt) = self.oracle_opt {
            if self.witness_scatter > opt + tol {
                out.push(format!(
                    "{}: witness scatter {} exceeds the optimum {opt}",
                    self.instance_id, self.witness_scatter
                ));
            }
            if self.witness_scatter < (1.0 - self.epsilon) * opt - tol {
                out.push(format!(
                    "{}: witness scatter {} below (1-eps)*opt",
                    self.instance_id, self.witness_scatter
                ));
            }
        }
        out
    }
}

struct Cell {
    id: String,
    kind: GeneratorKind,
    n: usize,
    dim: usize,
    seed: u64,
    params: GenParams,
    epsilon: f64,
}

fn cells(suite: Suite) -> Vec<Cell> {
    let mut out = Vec::new();
    let mut push = |kind, n, dim, seed, params: GenParams, epsilons: &[f64]| {
        for &epsilon in epsilons {
            out.push(Cell {
                id: format!("{kind}-n{n}-d{dim}-s{seed}-e{epsilon}"),
                kind,
                n,
                dim,
                seed,
                params: params.clone(),
                epsilon,
            });
        }
    };
    match suite {
        Suite::Smoke => {
            for (i, kind) in [GeneratorKind::Uniform, GeneratorKind::Clustered, GeneratorKind::Line]
                .into_iter()
                .enumerate()
            {
                for n in [6, 9] {
                    push(kind, n, 2, i as u64 + 1, GenParams::default(), &[0.1, 0.3]);
                }
            }
        }
        Suite::Standard => {
            for kind in [GeneratorKind::Uniform, GeneratorKind::Clustered, GeneratorKind::Grid] {
                for n in [12, 100, 500, 2000] {
                    push(kind, n, 2, 7, GenParams::default(), &[0.1, 0.3]);
                }
            }
        }
        Suite::Scale => {
            let params = GenParams {
                spread: 1.0,
                far: 100.0,
                clumps: 3,
                far_clumps: 3,
                ..GenParams::default()
            };
            push(GeneratorKind::Clustered, 10_000, 2, 8, params, &[0.1]);
        }
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

fn run_cell(cell: &Cell, with_oracle: bool) -> Result<BenchRecord, CliError> {
    let instance: Instance = generate(cell.kind, cell.n, cell.dim, cell.seed, &cell.params)?;
    let oracle_opt = if with_oracle && cell.n <= BRUTE_FORCE_MAX_N {
        Some(brute_force_mstsp(&instance)?.opt)
    } else {
        None
    };
    let start = Instant::now();
    let best = maximize_scatter(&instance, cell.epsilon)?;
    let runtime_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(BenchRecord {
        instance_id: cell.id.clone(),
        n: instance.n(),
        dim: instance.dim(),
        metric: instance.metric().to_string(),
        epsilon: cell.epsilon,
        ell_hat: best.ell_hat,
        witness_scatter: scatter(&instance, &best.tour)?,
        oracle_opt,
        branch: best.branch.to_string(),
        net_size: best.max_net_size,
        runtime_ms,
        seed: cell.seed,
    })
}

pub fn run(args: BenchArgs) -> Result<(), CliError> {
    let cells = cells(args.suite);
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = args.threads {
        if t == 0 {
            return Err(CliError::input("thread count must be positive"));
        }
        pool = pool.num_threads(t);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::input(format!("thread pool: {e}")))?;
    // collect keeps cell order, so rows come out sorted by instance_id
    let records: Vec<BenchRecord> = pool.install(|| {
        cells
            .par_iter()
            .map(|c| run_cell(c, args.oracle))
            .collect::<Result<_, _>>()
    })?;

    let mut writer = csv::Writer::from_path(&args.out)
        .map_err(|e| CliError::input(format!("{}: {e}", args.out.display())))?;
    for rec in &records {
        writer
            .serialize(rec)
            .map_err(|e| CliError::input(format!("writing {}: {e}", args.out.display())))?;
    }
    writer
        .flush()
        .map_err(|e| CliError::input(format!("writing {}: {e}", args.out.display())))?;

    for rec in &records {
        for v in rec.violations() {
            warn(!args.lenient, v)?;
        }
    }
    println!("{} records written to {}", records.len(), args.out.display());
    Ok(())
}
