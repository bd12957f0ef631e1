//! The (1−ε) decision procedure for maximum scatter and the search that
//! turns it into an optimizer.
//!
//! `decide_scatter` answers Yes with a tour of scatter at least `ℓ(1−ε)`
//! whenever a tour of scatter `ℓ` exists, and No only when none does. Without
//! a low-degree point the threshold graph meets Dirac's condition. Otherwise
//! the points near the low-degree point are compressed onto a δ-net, the far
//! points onto a single vertex `q`, a many-visits walk is found on that small
//! graph, expanded back to points, and the few short edges it may contain are
//! removed by Bondy-Chvátal lifting.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Result, ScatterError};
use crate::exec::{self, Parallelism};
use crate::graph::{
    bc_lift, dirac_hamiltonian, threshold_graph_with, EdgeAdditionLog, ThresholdGraph,
};
use crate::instance::{at_least, distinct, scatter, tolerance, Instance, Tour};
use crate::many_visits::{many_visits_tour, VisitSpec};
use crate::net::greedy_delta_net;

/// Threshold `ell` and accuracy `epsilon` of one decision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecisionParams {
    pub ell: f64,
    pub epsilon: f64,
}

impl DecisionParams {
    pub fn new(ell: f64, epsilon: f64) -> Result<Self> {
        if !(ell > 0.0 && ell.is_finite()) {
            return Err(ScatterError::InvalidParameter(format!(
                "ell must be positive and finite, got {ell}"
            )));
        }
        check_epsilon(epsilon)?;
        Ok(DecisionParams { ell, epsilon })
    }

    /// Net radius.
    pub fn delta(&self) -> f64 {
        self.epsilon * self.ell / 4.0
    }

    /// Two net centers are adjacent iff they are at least this far apart.
    pub fn center_threshold(&self) -> f64 {
        self.ell - 2.0 * self.delta()
    }

    /// Scatter guaranteed by a Yes witness.
    pub fn guaranteed(&self) -> f64 {
        self.ell * (1.0 - self.epsilon)
    }
}

fn check_epsilon(epsilon: f64) -> Result<()> {
    if epsilon > 0.0 && epsilon < 1.0 {
        Ok(())
    } else {
        Err(ScatterError::InvalidParameter(format!(
            "epsilon must lie in (0, 1), got {epsilon}"
        )))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Yes,
    No,
}

/// Which half of the procedure produced the answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Dirac,
    ManyVisits,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Dirac => "dirac",
            Branch::ManyVisits => "many_visits",
        })
    }
}

/// Balls around a low-degree point `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowDegreeContext {
    pub p: usize,
    /// Points strictly closer than `2ℓ` to `p`, ascending.
    pub b2_members: Vec<usize>,
    /// Points strictly closer than `3ℓ` to `p`, ascending.
    pub b3_members: Vec<usize>,
    /// Everything else, ascending.
    pub outside: Vec<usize>,
}

impl LowDegreeContext {
    pub fn new(instance: &Instance, p: usize, ell: f64) -> Self {
        let mut ctx = LowDegreeContext {
            p,
            b2_members: Vec::new(),
            b3_members: Vec::new(),
            outside: Vec::new(),
        };
        for x in 0..instance.n() {
            let d = instance.dist(p, x);
            if !at_least(d, 3.0 * ell) {
                ctx.b3_members.push(x);
                if !at_least(d, 2.0 * ell) {
                    ctx.b2_members.push(x);
                }
            } else {
                ctx.outside.push(x);
            }
        }
        ctx
    }

    /// Visits assigned to the far vertex `q`.
    pub fn n_q(&self) -> usize {
        self.outside.len()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DecisionOutcome {
    pub answer: Answer,
    /// Present iff the answer is Yes.
    pub witness: Option<Tour>,
    pub witness_scatter: Option<f64>,
    pub branch: Branch,
    /// Number of net centers (many-visits branch only).
    pub net_size: Option<usize>,
    pub low_degree: Option<LowDegreeContext>,
}

impl DecisionOutcome {
    pub fn is_yes(&self) -> bool {
        self.answer == Answer::Yes
    }
}

/// Lowest-index point whose open radius-`ell` ball holds more than half the
/// points, if any.
pub fn find_low_degree_point(instance: &Instance, ell: f64) -> Option<usize> {
    find_low_degree_point_with(instance, ell, Parallelism::default())
}

pub fn find_low_degree_point_with(instance: &Instance, ell: f64, par: Parallelism) -> Option<usize> {
    exec::find_first_index(instance.n(), par, |p| is_low_degree(instance, p, ell))
}

/// Counts the ball around `p`, stopping as soon as the outcome is settled.
fn is_low_degree(instance: &Instance, p: usize, ell: f64) -> bool {
    let n = instance.n();
    let need = n / 2 + 1;
    let mut inside = 0;
    for x in 0..n {
        if !at_least(instance.dist(p, x), ell) {
            inside += 1;
            if inside >= need {
                return true;
            }
        }
        if inside + (n - x - 1) < need {
            return false;
        }
    }
    false
}

pub fn decide_scatter(instance: &Instance, params: &DecisionParams) -> Result<DecisionOutcome> {
    decide_scatter_with(instance, params, Parallelism::default())
}

/// Decides whether a tour of scatter `ell` exists, up to a factor `1−ε`.
///
/// Yes answers carry a witness that has been re-validated against the
/// instance; a witness failing validation is reported as
/// [`ScatterError::Contract`], never as No.
pub fn decide_scatter_with(
    instance: &Instance,
    params: &DecisionParams,
    par: Parallelism,
) -> Result<DecisionOutcome> {
    let params = DecisionParams::new(params.ell, params.epsilon)?;
    let ell = params.ell;

    let Some(p) = find_low_degree_point_with(instance, ell, par) else {
        let graph = threshold_graph_with(instance, ell, par);
        let tour = dirac_hamiltonian(&graph).map_err(|e| {
            ScatterError::Contract(format!("no low-degree point but Dirac failed: {e}"))
        })?;
        return yes(instance, &params, tour, Branch::Dirac, None, None);
    };

    let ctx = LowDegreeContext::new(instance, p, ell);
    let net = greedy_delta_net(instance, &ctx.b3_members, params.delta())?;
    let k = net.len();
    let with_q = ctx.n_q() > 0;

    let mut allowed = ThresholdGraph::empty(k + usize::from(with_q));
    let center_thr = params.center_threshold();
    for a in 0..k {
        for b in (a + 1)..k {
            let d = instance.dist(net.center_ids[a], net.center_ids[b]);
            if d >= center_thr - tolerance(ell) {
                allowed.add_edge(a, b);
            }
        }
        if with_q {
            allowed.add_edge(a, k);
        }
    }
    let mut visits: Vec<u64> = net.preimages.iter().map(|pre| pre.len() as u64).collect();
    if with_q {
        visits.push(ctx.n_q() as u64);
    }

    let spec = VisitSpec::new(allowed, visits)?;
    let Some(walk) = many_visits_tour(&spec)? else {
        return Ok(DecisionOutcome {
            answer: Answer::No,
            witness: None,
            witness_scatter: None,
            branch: Branch::ManyVisits,
            net_size: Some(k),
            low_degree: Some(ctx),
        });
    };

    // each visit of a center consumes its next preimage, each visit of q the
    // next outside point
    let mut cursor = vec![0usize; k + 1];
    let mut order = Vec::with_capacity(instance.n());
    for v in walk.iter() {
        let pool = if v < k { &net.preimages[v] } else { &ctx.outside };
        order.push(pool[cursor[v]]);
        cursor[v] += 1;
    }
    let expanded = Tour::new(order)
        .map_err(|e| ScatterError::Contract(format!("walk expansion is not a tour: {e}")))?;

    let lifted_thr = params.guaranteed();
    let short: Vec<(usize, usize)> = expanded
        .edges()
        .filter(|&(a, b)| !at_least(instance.dist(a, b), lifted_thr))
        .collect();
    let tour = if short.is_empty() {
        expanded
    } else {
        let base = threshold_graph_with(instance, lifted_thr, par);
        let lift = EdgeAdditionLog::new(&base, short).and_then(|log| bc_lift(&base, &log, &expanded));
        lift.map_err(|e| ScatterError::Contract(format!("lifting the expanded walk failed: {e}")))?
    };
    yes(instance, &params, tour, Branch::ManyVisits, Some(k), Some(ctx))
}

fn yes(
    instance: &Instance,
    params: &DecisionParams,
    tour: Tour,
    branch: Branch,
    net_size: Option<usize>,
    low_degree: Option<LowDegreeContext>,
) -> Result<DecisionOutcome> {
    let s = scatter(instance, &tour)?;
    if !at_least(s, params.guaranteed()) {
        return Err(ScatterError::Contract(format!(
            "{branch} witness has scatter {s}, below {}",
            params.guaranteed()
        )));
    }
    Ok(DecisionOutcome {
        answer: Answer::Yes,
        witness: Some(tour),
        witness_scatter: Some(s),
        branch,
        net_size,
        low_degree,
    })
}

/// Result of [`maximize_scatter`].
#[derive(Clone, Debug, PartialEq)]
pub struct Maximized {
    /// Largest probed candidate with a Yes answer; at least the optimum.
    pub ell_hat: f64,
    pub tour: Tour,
    pub witness_scatter: f64,
    /// Branch of the decision that produced `tour`.
    pub branch: Branch,
    pub net_size: Option<usize>,
    /// Number of decisions made.
    pub probes: usize,
    /// Largest net seen over all probes.
    pub max_net_size: Option<usize>,
}

/// Above this many in-range pairs the search pivots on sampled medians
/// instead of sorting them all.
const MATERIALIZE_LIMIT: u64 = 1 << 22;
const PIVOT_SAMPLE: usize = 1025;
const PIVOT_SEED: u64 = 0x5ca7_7e55;

pub fn maximize_scatter(instance: &Instance, epsilon: f64) -> Result<Maximized> {
    maximize_scatter_with(instance, epsilon, Parallelism::default())
}

/// Binary search over pairwise distances with the invariant that `lo` was
/// answered Yes (and holds its witness) and `hi` was answered No. Returns
/// a tour with scatter at least `(1−ε)·OPT`.
pub fn maximize_scatter_with(instance: &Instance, epsilon: f64, par: Parallelism) -> Result<Maximized> {
    check_epsilon(epsilon)?;
    let mut search = Search {
        instance,
        epsilon,
        par,
        probes: 0,
        max_net: None,
    };

    let (min, max) = extreme_distances(instance, par);
    let mut lo = search.start(min)?;
    if !distinct(lo.ell_hat, max) {
        return Ok(search.finish(lo));
    }
    if let Some(best) = search.probe(max)? {
        return Ok(search.finish(best));
    }
    let mut hi = max;

    let mut rng = ChaCha8Rng::seed_from_u64(PIVOT_SEED);
    loop {
        let inside = |d: f64| d > lo.ell_hat && d < hi && distinct(lo.ell_hat, d) && distinct(d, hi);
        let count = count_pairs(instance, par, inside);
        if count == 0 {
            break;
        }
        if count <= MATERIALIZE_LIMIT {
            let values = collect_pairs(instance, par, inside);
            let (mut a, mut b) = (0, values.len());
            while a < b {
                let mid = a + (b - a) / 2;
                match search.probe(values[mid])? {
                    Some(best) => {
                        lo = best;
                        a = mid + 1;
                    }
                    None => b = mid,
                }
            }
            break;
        }
        let pivot = sample_pivot(instance, &mut rng, inside)
            .unwrap_or_else(|| collect_pairs(instance, par, inside)[(count / 2) as usize]);
        match search.probe(pivot)? {
            Some(best) => lo = best,
            None => hi = pivot,
        }
    }
    Ok(search.finish(lo))
}

struct Search<'a> {
    instance: &'a Instance,
    epsilon: f64,
    par: Parallelism,
    probes: usize,
    max_net: Option<usize>,
}

impl Search<'_> {
    /// The smallest distance is always feasible; zero needs no decision.
    fn start(&mut self, min: f64) -> Result<Maximized> {
        if min > 0.0 {
            return self.probe(min)?.ok_or_else(|| {
                ScatterError::Contract(format!("smallest distance {min} answered No"))
            });
        }
        let tour = Tour::identity(self.instance.n());
        Ok(Maximized {
            ell_hat: 0.0,
            witness_scatter: scatter(self.instance, &tour)?,
            tour,
            branch: Branch::Dirac,
            net_size: None,
            probes: 0,
            max_net_size: None,
        })
    }

    fn probe(&mut self, ell: f64) -> Result<Option<Maximized>> {
        self.probes += 1;
        let params = DecisionParams::new(ell, self.epsilon)?;
        let out = decide_scatter_with(self.instance, &params, self.par)?;
        if let Some(k) = out.net_size {
            self.max_net = Some(self.max_net.map_or(k, |m| m.max(k)));
        }
        Ok(match (out.witness, out.witness_scatter) {
            (Some(tour), Some(s)) => Some(Maximized {
                ell_hat: ell,
                tour,
                witness_scatter: s,
                branch: out.branch,
                net_size: out.net_size,
                probes: 0,
                max_net_size: None,
            }),
            _ => None,
        })
    }

    fn finish(&self, mut best: Maximized) -> Maximized {
        best.probes = self.probes;
        best.max_net_size = self.max_net;
        best
    }
}

fn extreme_distances(instance: &Instance, par: Parallelism) -> (f64, f64) {
    let n = instance.n();
    let rows = exec::map_indices(n, par, |i| {
        ((i + 1)..n)
            .map(|j| instance.dist(i, j))
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), d| (lo.min(d), hi.max(d)))
    });
    rows.into_iter()
        .fold((f64::INFINITY, 0.0), |(lo, hi), (a, b)| (lo.min(a), hi.max(b)))
}

fn count_pairs(instance: &Instance, par: Parallelism, keep: impl Fn(f64) -> bool + Sync + Send) -> u64 {
    let n = instance.n();
    exec::sum_indices(n, par, |i| {
        ((i + 1)..n).filter(|&j| keep(instance.dist(i, j))).count() as u64
    })
}

/// Sorted, deduplicated distances accepted by `keep`.
fn collect_pairs(instance: &Instance, par: Parallelism, keep: impl Fn(f64) -> bool + Sync + Send) -> Vec<f64> {
    let n = instance.n();
    let rows = exec::map_indices(n, par, |i| {
        ((i + 1)..n)
            .map(|j| instance.dist(i, j))
            .filter(|&d| keep(d))
            .collect::<Vec<_>>()
    });
    crate::instance::CandidateDistances::from_raw(rows.concat())
        .values()
        .to_vec()
}

/// Median of distances of random pairs accepted by `keep`.
fn sample_pivot(instance: &Instance, rng: &mut ChaCha8Rng, keep: impl Fn(f64) -> bool) -> Option<f64> {
    let n = instance.n();
    let mut sample = Vec::with_capacity(PIVOT_SAMPLE);
    let mut attempts = 0u64;
    while sample.len() < PIVOT_SAMPLE && attempts < 1 << 26 {
        attempts += 1;
        let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
        if i != j {
            let d = instance.dist(i, j);
            if keep(d) {
                sample.push(d);
            }
        }
    }
    if sample.is_empty() {
        return None;
    }
    sample.sort_unstable_by(f64::total_cmp);
    Some(sample[sample.len() / 2])
}
