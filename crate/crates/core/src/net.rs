//! Greedy δ-nets and grid rounding.

use std::collections::BTreeMap;

use crate::error::{Result, ScatterError};
use crate::instance::{Instance, Metric};

/// A δ-net over a subset of an instance's points.
///
/// Centers are pairwise more than `delta` apart and every point of the
/// subset lies within `delta` of its assigned (nearest) center.
#[derive(Clone, Debug, PartialEq)]
pub struct Net {
    /// Point ids chosen as centers, in selection order (ascending).
    pub center_ids: Vec<usize>,
    /// Point id → position in `center_ids` of its nearest center.
    pub assignment: BTreeMap<usize, usize>,
    /// Center position → assigned point ids, ascending.
    pub preimages: Vec<Vec<usize>>,
    pub delta: f64,
}

impl Net {
    pub fn len(&self) -> usize {
        self.center_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.center_ids.is_empty()
    }

    /// Center point id assigned to point `x`.
    pub fn center_of(&self, x: usize) -> Option<usize> {
        self.assignment.get(&x).map(|&c| self.center_ids[c])
    }

    /// Largest point-to-center distance.
    pub fn covering_radius(&self, instance: &Instance) -> f64 {
        self.assignment
            .iter()
            .map(|(&x, &c)| instance.dist(x, self.center_ids[c]))
            .fold(0.0, f64::max)
    }

    /// Smallest distance between two distinct centers (infinite for one center).
    pub fn separation(&self, instance: &Instance) -> f64 {
        let c = &self.center_ids;
        (0..c.len())
            .flat_map(|a| ((a + 1)..c.len()).map(move |b| (a, b)))
            .map(|(a, b)| instance.dist(c[a], c[b]))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Greedy δ-net of `subset`: scan in ascending id order, make each unmarked
/// point a center and mark everything within `delta` of it. Points are then
/// assigned to their nearest center, ties to the earliest center.
/// O(|subset|²).
pub fn greedy_delta_net(instance: &Instance, subset: &[usize], delta: f64) -> Result<Net> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(ScatterError::InvalidParameter(format!(
            "delta must be positive, got {delta}"
        )));
    }
    if subset.is_empty() {
        return Err(ScatterError::InvalidParameter("subset is empty".into()));
    }
    let mut ids = subset.to_vec();
    ids.sort_unstable();
    ids.dedup();
    if let Some(&bad) = ids.iter().find(|&&x| x >= instance.n()) {
        return Err(ScatterError::IndexOutOfRange {
            index: bad,
            len: instance.n(),
        });
    }

    let mut marked = vec![false; ids.len()];
    let mut center_ids = Vec::new();
    for a in 0..ids.len() {
        if marked[a] {
            continue;
        }
        center_ids.push(ids[a]);
        for b in a..ids.len() {
            if !marked[b] && instance.dist(ids[a], ids[b]) <= delta {
                marked[b] = true;
            }
        }
    }

    let mut assignment = BTreeMap::new();
    let mut preimages = vec![Vec::new(); center_ids.len()];
    for &x in &ids {
        let mut best = 0;
        let mut best_d = f64::INFINITY;
        for (c, &center) in center_ids.iter().enumerate() {
            let d = instance.dist(x, center);
            if d < best_d {
                best = c;
                best_d = d;
            }
        }
        assignment.insert(x, best);
        preimages[best].push(x);
    }
    Ok(Net {
        center_ids,
        assignment,
        preimages,
        delta,
    })
}

/// Rounds each coordinate to the nearest multiple of `delta`; exact halves
/// round toward +∞.
pub fn round_to_grid(point: &[f64], delta: f64) -> Vec<f64> {
    point
        .iter()
        .map(|&c| delta * (c / delta + 0.5).floor())
        .collect()
}

/// Grid image of every point of an ℓp instance.
pub fn grid_round(instance: &Instance, delta: f64) -> Result<Vec<Vec<f64>>> {
    if !(delta > 0.0 && delta.is_finite()) {
        return Err(ScatterError::InvalidParameter(format!(
            "delta must be positive, got {delta}"
        )));
    }
    if !matches!(instance.metric(), Metric::Lp(_)) {
        return Err(ScatterError::InvalidParameter(format!(
            "grid rounding needs real coordinates, instance metric is {}",
            instance.metric()
        )));
    }
    Ok((0..instance.n())
        .map(|i| round_to_grid(instance.coords(i).unwrap(), delta))
        .collect())
}
