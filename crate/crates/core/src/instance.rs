//! Point sets, metrics, tours and the scatter objective.

use serde::{Deserialize, Serialize};

use crate::error::{Result, ScatterError};
use crate::exec::{self, Parallelism};

/// Relative slack used by every threshold comparison in the crate.
pub const THRESHOLD_REL_TOL: f64 = 1e-9;

/// Relative tolerance below which two pairwise distances count as one candidate.
pub const CANDIDATE_DEDUP_REL_TOL: f64 = 1e-12;

/// Absolute slack applied when comparing a distance against `ell`.
#[inline]
pub fn tolerance(ell: f64) -> f64 {
    THRESHOLD_REL_TOL * ell.abs().max(1.0)
}

/// `d >= ell` up to [`tolerance`].
#[inline]
pub fn at_least(d: f64, ell: f64) -> bool {
    d >= ell - tolerance(ell)
}

/// Exponent of an ℓp norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum LpNorm {
    P(f64),
    Infinity,
}

impl LpNorm {
    pub fn new(p: f64) -> Result<Self> {
        if p.is_infinite() && p > 0.0 {
            Ok(LpNorm::Infinity)
        } else if p.is_finite() && p >= 1.0 {
            Ok(LpNorm::P(p))
        } else {
            Err(ScatterError::InvalidParameter(format!(
                "lp exponent must be >= 1 or infinity, got {p}"
            )))
        }
    }

    #[inline]
    fn eval(self, a: &[f64], b: &[f64]) -> f64 {
        let diffs = a.iter().zip(b).map(|(x, y)| (x - y).abs());
        match self {
            LpNorm::Infinity => diffs.fold(0.0, f64::max),
            LpNorm::P(1.0) => diffs.sum(),
            LpNorm::P(2.0) => diffs.map(|d| d * d).sum::<f64>().sqrt(),
            LpNorm::P(p) => diffs.map(|d| d.powf(p)).sum::<f64>().powf(1.0 / p),
        }
    }
}

impl std::fmt::Display for LpNorm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LpNorm::P(p) => write!(f, "l{p}"),
            LpNorm::Infinity => write!(f, "linf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Metric {
    Lp(LpNorm),
    Hamming,
    Explicit,
}

impl std::fmt::Display for Metric {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Metric::Lp(norm) => norm.fmt(f),
            Metric::Hamming => f.write_str("hamming"),
            Metric::Explicit => f.write_str("explicit"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Storage {
    /// Row-major `n × dim` coordinates.
    Real(Vec<f64>),
    /// Bit vectors packed into `words` u64 per point.
    Bits { words: usize, data: Vec<u64> },
    /// Row-major `n × n` distance matrix.
    Matrix(Vec<f64>),
}

/// An immutable set of `n >= 3` points together with their metric.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    metric: Metric,
    n: usize,
    dim: usize,
    storage: Storage,
}

fn check_count(n: usize) -> Result<()> {
    if n < 3 {
        return Err(ScatterError::InvalidInstance(format!(
            "need at least 3 points, got {n}"
        )));
    }
    Ok(())
}

impl Instance {
    /// Points in R^dim under an ℓp norm.
    pub fn lp(norm: LpNorm, points: Vec<Vec<f64>>) -> Result<Self> {
        let n = points.len();
        check_count(n)?;
        let dim = points[0].len();
        let mut data = Vec::with_capacity(n * dim);
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(ScatterError::InvalidInstance(format!(
                    "points[{i}]: expected dimension {dim}, found {}",
                    p.len()
                )));
            }
            if let Some(c) = p.iter().find(|c| !c.is_finite()) {
                return Err(ScatterError::InvalidInstance(format!(
                    "points[{i}]: non-finite coordinate {c}"
                )));
            }
            data.extend_from_slice(p);
        }
        Ok(Instance {
            metric: Metric::Lp(norm),
            n,
            dim,
            storage: Storage::Real(data),
        })
    }

    pub fn euclidean(points: Vec<Vec<f64>>) -> Result<Self> {
        Self::lp(LpNorm::P(2.0), points)
    }

    /// Bit vectors under Hamming distance. Every entry must be 0 or 1.
    pub fn hamming(points: &[Vec<u8>]) -> Result<Self> {
        let n = points.len();
        check_count(n)?;
        let dim = points[0].len();
        let words = dim.div_ceil(64).max(1);
        let mut data = vec![0u64; n * words];
        for (i, p) in points.iter().enumerate() {
            if p.len() != dim {
                return Err(ScatterError::InvalidInstance(format!(
                    "points[{i}]: expected dimension {dim}, found {}",
                    p.len()
                )));
            }
            for (k, &bit) in p.iter().enumerate() {
                match bit {
                    0 => {}
                    1 => data[i * words + k / 64] |= 1 << (k % 64),
                    other => {
                        return Err(ScatterError::InvalidInstance(format!(
                            "points[{i}][{k}]: hamming coordinate must be 0 or 1, found {other}"
                        )))
                    }
                }
            }
        }
        Ok(Instance {
            metric: Metric::Hamming,
            n,
            dim,
            storage: Storage::Bits { words, data },
        })
    }

    /// An explicit symmetric distance matrix with zero diagonal.
    pub fn explicit(matrix: Vec<Vec<f64>>) -> Result<Self> {
        let n = matrix.len();
        check_count(n)?;
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in matrix.iter().enumerate() {
            if row.len() != n {
                return Err(ScatterError::InvalidInstance(format!(
                    "matrix[{i}]: expected {n} entries, found {}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    return Err(ScatterError::InvalidInstance(format!(
                        "matrix[{i}][{j}]: distances must be finite and nonnegative, found {v}"
                    )));
                }
            }
            if row[i] != 0.0 {
                return Err(ScatterError::InvalidInstance(format!(
                    "matrix[{i}][{i}]: diagonal must be zero, found {}",
                    row[i]
                )));
            }
            data.extend_from_slice(row);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if data[i * n + j] != data[j * n + i] {
                    return Err(ScatterError::InvalidInstance(format!(
                        "matrix is not symmetric: matrix[{i}][{j}] = {} but matrix[{j}][{i}] = {}",
                        data[i * n + j],
                        data[j * n + i]
                    )));
                }
            }
        }
        Ok(Instance {
            metric: Metric::Explicit,
            n,
            dim: 0,
            storage: Storage::Matrix(data),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coordinate dimension; 0 for explicit matrices.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    /// Real coordinates of point `i` (ℓp instances only).
    pub fn coords(&self, i: usize) -> Option<&[f64]> {
        match &self.storage {
            Storage::Real(data) => data.get(i * self.dim..(i + 1) * self.dim),
            _ => None,
        }
    }

    /// Bits of point `i` as 0/1 bytes (Hamming instances only).
    pub fn bits(&self, i: usize) -> Option<Vec<u8>> {
        match &self.storage {
            Storage::Bits { words, data } if i < self.n => {
                let row = &data[i * words..(i + 1) * words];
                Some(
                    (0..self.dim)
                        .map(|k| ((row[k / 64] >> (k % 64)) & 1) as u8)
                        .collect(),
                )
            }
            _ => None,
        }
    }

    /// Row `i` of the distance matrix (explicit instances only).
    pub fn matrix_row(&self, i: usize) -> Option<&[f64]> {
        match &self.storage {
            Storage::Matrix(data) => data.get(i * self.n..(i + 1) * self.n),
            _ => None,
        }
    }

    /// Distance between points `i` and `j`. Panics on out-of-range indices;
    /// use [`Instance::distance`] for a checked variant.
    #[inline]
    pub fn dist(&self, i: usize, j: usize) -> f64 {
        match (&self.storage, self.metric) {
            (Storage::Real(data), Metric::Lp(norm)) => {
                let d = self.dim;
                norm.eval(&data[i * d..(i + 1) * d], &data[j * d..(j + 1) * d])
            }
            (Storage::Bits { words, data }, _) => {
                let a = &data[i * words..(i + 1) * words];
                let b = &data[j * words..(j + 1) * words];
                a.iter()
                    .zip(b)
                    .map(|(x, y)| (x ^ y).count_ones())
                    .sum::<u32>() as f64
            }
            (Storage::Matrix(data), _) => {
                assert!(i < self.n && j < self.n, "index out of range");
                data[i * self.n + j]
            }
            (Storage::Real(_), _) => unreachable!("real coordinates always carry an lp metric"),
        }
    }

    pub fn distance(&self, i: usize, j: usize) -> Result<f64> {
        for index in [i, j] {
            if index >= self.n {
                return Err(ScatterError::IndexOutOfRange { index, len: self.n });
            }
        }
        Ok(self.dist(i, j))
    }

    /// Checks the triangle inequality on every triple. Intended for
    /// explicit matrices loaded with a strict-metric flag; O(n³).
    pub fn check_triangle_inequality(&self) -> Result<()> {
        for i in 0..self.n {
            for j in 0..self.n {
                let dij = self.dist(i, j);
                for k in 0..self.n {
                    let bound = self.dist(i, k) + self.dist(k, j);
                    if dij > bound + tolerance(bound) {
                        return Err(ScatterError::InvalidInstance(format!(
                            "triangle inequality fails: d({i},{j}) = {dij} > d({i},{k}) + d({k},{j}) = {bound}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// The same points under a different ℓp norm.
    pub fn with_norm(&self, norm: LpNorm) -> Result<Self> {
        match &self.storage {
            Storage::Real(_) => Ok(Instance {
                metric: Metric::Lp(norm),
                ..self.clone()
            }),
            Storage::Bits { .. } => {
                let points = (0..self.n)
                    .map(|i| {
                        self.bits(i)
                            .unwrap()
                            .into_iter()
                            .map(f64::from)
                            .collect()
                    })
                    .collect();
                Instance::lp(norm, points)
            }
            Storage::Matrix(_) => Err(ScatterError::InvalidParameter(
                "explicit instances have no coordinates".into(),
            )),
        }
    }
}

/// A cyclic visiting order: a permutation of `0..n`, closing back from the
/// last index to the first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Tour(Vec<usize>);

impl Tour {
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n {
                return Err(ScatterError::MalformedTour(format!(
                    "index {v} out of range for a tour of length {n}"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(ScatterError::MalformedTour(format!("index {v} repeated")));
            }
        }
        Ok(Tour(order))
    }

    pub fn identity(n: usize) -> Self {
        Tour((0..n).collect())
    }

    pub fn order(&self) -> &[usize] {
        &self.0
    }

    pub fn into_order(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The `n` cyclic edges `(order[i], order[i+1])`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.0.len();
        (0..n).map(move |i| (self.0[i], self.0[(i + 1) % n]))
    }

    pub fn rotated(&self, k: usize) -> Tour {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let len = v.len();
            v.rotate_left(k % len);
        }
        Tour(v)
    }

    pub fn reversed(&self) -> Tour {
        Tour(self.0.iter().rev().copied().collect())
    }
}

impl TryFrom<Vec<usize>> for Tour {
    type Error = ScatterError;
    fn try_from(order: Vec<usize>) -> Result<Self> {
        Tour::new(order)
    }
}

impl From<Tour> for Vec<usize> {
    fn from(t: Tour) -> Self {
        t.0
    }
}

/// Minimum distance between cyclically adjacent points of `tour`.
pub fn scatter(instance: &Instance, tour: &Tour) -> Result<f64> {
    if tour.len() != instance.n() {
        return Err(ScatterError::MalformedTour(format!(
            "tour has {} entries but the instance has {} points",
            tour.len(),
            instance.n()
        )));
    }
    Ok(tour
        .edges()
        .map(|(a, b)| instance.dist(a, b))
        .fold(f64::INFINITY, f64::min))
}

/// Sorted, deduplicated pairwise distances. The optimum scatter is always
/// one of these values.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateDistances {
    values: Vec<f64>,
}

impl CandidateDistances {
    /// Sorts and deduplicates raw distances.
    pub fn from_raw(mut raw: Vec<f64>) -> Self {
        raw.sort_unstable_by(f64::total_cmp);
        let mut values: Vec<f64> = Vec::with_capacity(raw.len());
        for v in raw {
            match values.last() {
                Some(&last) if !distinct(last, v) => {}
                _ => values.push(v),
            }
        }
        CandidateDistances { values }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Whether `v` matches a candidate up to the dedup tolerance.
    pub fn contains(&self, v: f64) -> bool {
        let idx = self.values.partition_point(|&c| c < v);
        [idx.checked_sub(1), Some(idx)]
            .into_iter()
            .flatten()
            .filter_map(|i| self.values.get(i))
            .any(|&c| !distinct(c, v))
    }
}

#[inline]
pub(crate) fn distinct(a: f64, b: f64) -> bool {
    (b - a).abs() > CANDIDATE_DEDUP_REL_TOL * a.abs().max(b.abs())
}

pub fn candidate_distances(instance: &Instance) -> CandidateDistances {
    candidate_distances_with(instance, Parallelism::default())
}

pub fn candidate_distances_with(instance: &Instance, par: Parallelism) -> CandidateDistances {
    let n = instance.n();
    let rows = exec::map_indices(n, par, |i| {
        ((i + 1)..n).map(|j| instance.dist(i, j)).collect::<Vec<_>>()
    });
    CandidateDistances::from_raw(rows.concat())
}
