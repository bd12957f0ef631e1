//! Seeded instance generators.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Result, ScatterError};
use crate::instance::{Instance, LpNorm};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    /// Uniform in the unit cube.
    Uniform,
    /// A tight cluster holding more than half of the points plus far points.
    Clustered,
    /// Equally spaced points on the first axis.
    Line,
    /// Integer lattice points, row-major, first `n`.
    Grid,
}

impl FromStr for GeneratorKind {
    type Err = ScatterError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(GeneratorKind::Uniform),
            "clustered" => Ok(GeneratorKind::Clustered),
            "line" => Ok(GeneratorKind::Line),
            "grid" => Ok(GeneratorKind::Grid),
            other => Err(ScatterError::InvalidParameter(format!(
                "unknown generator kind `{other}` (expected uniform, clustered, line or grid)"
            ))),
        }
    }
}

impl std::fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            GeneratorKind::Uniform => "uniform",
            GeneratorKind::Clustered => "clustered",
            GeneratorKind::Line => "line",
            GeneratorKind::Grid => "grid",
        })
    }
}

/// Kind-specific parameters. Only `Clustered` reads the cluster fields.
#[derive(Clone, Debug, PartialEq)]
pub struct GenParams {
    pub norm: LpNorm,
    /// Fraction of points placed in the cluster; the cluster always gets
    /// more than `n/2` points.
    pub cluster_frac: f64,
    /// Cluster diameter (one clump) or clump-circle radius (several clumps).
    pub spread: f64,
    /// Distance scale of the points outside the cluster.
    pub far: f64,
    /// Number of tight clumps the cluster is split into.
    pub clumps: usize,
    /// Number of tight clumps for the far points; 0 scatters them.
    pub far_clumps: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            norm: LpNorm::P(2.0),
            cluster_frac: 0.6,
            spread: 0.01,
            far: 10.0,
            clumps: 1,
            far_clumps: 0,
        }
    }
}

/// Jitter of a clump relative to `spread`.
const CLUMP_JITTER: f64 = 1e-4;

pub fn generate(
    kind: GeneratorKind,
    n: usize,
    dim: usize,
    seed: u64,
    params: &GenParams,
) -> Result<Instance> {
    if n < 3 {
        return Err(ScatterError::InvalidParameter(format!(
            "need n >= 3, got {n}"
        )));
    }
    if dim == 0 {
        return Err(ScatterError::InvalidParameter("dimension must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = match kind {
        GeneratorKind::Uniform => (0..n)
            .map(|_| (0..dim).map(|_| rng.random::<f64>()).collect())
            .collect(),
        GeneratorKind::Line => (0..n)
            .map(|i| {
                let mut p = vec![0.0; dim];
                p[0] = i as f64;
                p
            })
            .collect(),
        GeneratorKind::Grid => grid_points(n, dim),
        GeneratorKind::Clustered => clustered_points(n, dim, params, &mut rng)?,
    };
    Instance::lp(params.norm, points)
}

fn grid_points(n: usize, dim: usize) -> Vec<Vec<f64>> {
    let mut side = 1usize;
    while side.checked_pow(dim as u32).is_some_and(|c| c < n) {
        side += 1;
    }
    (0..n)
        .map(|mut idx| {
            (0..dim)
                .map(|_| {
                    let c = idx % side;
                    idx /= side;
                    c as f64
                })
                .collect()
        })
        .collect()
}

fn clustered_points(
    n: usize,
    dim: usize,
    params: &GenParams,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<f64>>> {
    let GenParams {
        cluster_frac,
        spread,
        far,
        clumps,
        far_clumps,
        ..
    } = *params;
    if !(cluster_frac > 0.0 && cluster_frac <= 1.0) {
        return Err(ScatterError::InvalidParameter(format!(
            "cluster_frac must lie in (0, 1], got {cluster_frac}"
        )));
    }
    if !(spread > 0.0 && spread.is_finite() && far > 0.0 && far.is_finite()) {
        return Err(ScatterError::InvalidParameter(
            "spread and far must be positive and finite".into(),
        ));
    }
    if clumps == 0 {
        return Err(ScatterError::InvalidParameter("clumps must be >= 1".into()));
    }
    let in_cluster = ((cluster_frac * n as f64).round() as usize)
        .max(n / 2 + 1)
        .min(n);

    let clump_centers = if clumps == 1 {
        vec![vec![0.0; dim]]
    } else {
        ring(clumps, spread, dim, 0.0)
    };
    let clump_radius = if clumps == 1 {
        spread / 2.0
    } else {
        spread * CLUMP_JITTER
    };
    let far_centers = ring(far_clumps, far, dim, 0.5);

    let mut points = Vec::with_capacity(n);
    for i in 0..in_cluster {
        let c = &clump_centers[i % clumps];
        let offset = in_ball(rng, dim, clump_radius);
        points.push(c.iter().zip(offset).map(|(a, b)| a + b).collect());
    }
    for i in 0..(n - in_cluster) {
        if far_clumps == 0 {
            let dir = direction(rng, dim);
            let r = far * (1.0 + rng.random::<f64>());
            points.push(dir.into_iter().map(|x| x * r).collect());
        } else {
            let c = &far_centers[i % far_clumps];
            let offset = in_ball(rng, dim, spread * CLUMP_JITTER);
            points.push(c.iter().zip(offset).map(|(a, b)| a + b).collect());
        }
    }
    Ok(points)
}

/// `count` points evenly spaced on a circle of `radius` in the first two
/// coordinates (or along the axis when `dim == 1`).
fn ring(count: usize, radius: f64, dim: usize, phase: f64) -> Vec<Vec<f64>> {
    (0..count)
        .map(|j| {
            let mut p = vec![0.0; dim];
            if dim == 1 {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                p[0] = sign * radius * (1 + j / 2) as f64;
            } else {
                let angle = std::f64::consts::TAU * (j as f64 + phase) / count as f64;
                p[0] = radius * angle.cos();
                p[1] = radius * angle.sin();
            }
            p
        })
        .collect()
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = 1.0 - rng.random::<f64>();
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

fn direction(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| gaussian(rng)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

fn in_ball(rng: &mut ChaCha8Rng, dim: usize, radius: f64) -> Vec<f64> {
    let r = radius * rng.random::<f64>().powf(1.0 / dim as f64);
    direction(rng, dim).into_iter().map(|x| x * r).collect()
}
