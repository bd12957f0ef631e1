use super::dirac::is_hamiltonian_cycle;
use super::ThresholdGraph;
use crate::error::{Result, ScatterError};
use crate::instance::Tour;

/// Ordered list of vertex pairs added on top of a base graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeAdditionLog {
    pairs: Vec<(usize, usize)>,
}

impl EdgeAdditionLog {
    /// Validates that every pair is a proper non-edge of `base` and that no
    /// pair repeats.
    pub fn new(base: &ThresholdGraph, pairs: Vec<(usize, usize)>) -> Result<Self> {
        let n = base.n();
        let mut seen = ThresholdGraph::empty(n);
        for &(u, v) in &pairs {
            if u >= n || v >= n {
                return Err(ScatterError::IndexOutOfRange {
                    index: u.max(v),
                    len: n,
                });
            }
            if u == v {
                return Err(ScatterError::Precondition(format!("self-loop {{{u}, {u}}} in log")));
            }
            if base.has_edge(u, v) {
                return Err(ScatterError::Precondition(format!(
                    "logged pair {{{u}, {v}}} is already an edge of the base graph"
                )));
            }
            if seen.has_edge(u, v) {
                return Err(ScatterError::Precondition(format!(
                    "logged pair {{{u}, {v}}} appears twice"
                )));
            }
            seen.add_edge(u, v);
        }
        Ok(EdgeAdditionLog { pairs })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// Bondy-Chvátal closure: add non-edges whose endpoint degrees sum to at
/// least `n` until none remains. Returns the closure and the addition order.
pub fn bondy_chvatal_closure(graph: &ThresholdGraph) -> (ThresholdGraph, EdgeAdditionLog) {
    let order: Vec<usize> = (0..graph.n()).collect();
    bondy_chvatal_closure_ordered(graph, &order)
}

/// Closure with the pair scan driven by `order` (a permutation of the
/// vertices). The resulting edge set does not depend on the order; the log
/// does.
pub fn bondy_chvatal_closure_ordered(
    graph: &ThresholdGraph,
    order: &[usize],
) -> (ThresholdGraph, EdgeAdditionLog) {
    let n = graph.n();
    assert_eq!(order.len(), n, "scan order must list every vertex");
    let mut closed = graph.clone();
    let mut degree = closed.degrees();
    let mut pairs = Vec::new();
    loop {
        let mut added = false;
        for (a, &u) in order.iter().enumerate() {
            for &v in &order[a + 1..] {
                if !closed.has_edge(u, v) && degree[u] + degree[v] >= n {
                    closed.add_edge(u, v);
                    degree[u] += 1;
                    degree[v] += 1;
                    pairs.push((u, v));
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    (closed, EdgeAdditionLog { pairs })
}

/// Turns a Hamiltonian cycle of `base ∪ added` into one of `base`.
///
/// Logged pairs are removed in reverse order. When the cycle uses the pair
/// `{u, v}` being removed, it is read as a path `v = x_0, ..., x_{n-1} = u`
/// and rewired at an index `i` with `v ~ x_{i+1}` and `u ~ x_i` in the graph
/// that remains. Such an index exists whenever `u` and `v` have degree sum at
/// least `n` there, which is checked up front for every entry.
pub fn bc_lift(base: &ThresholdGraph, added: &EdgeAdditionLog, cycle: &Tour) -> Result<Tour> {
    let n = base.n();
    let added = EdgeAdditionLog::new(base, added.pairs.clone())?;

    let mut degree = base.degrees();
    for &(u, v) in added.pairs() {
        if degree[u] + degree[v] < n {
            return Err(ScatterError::Precondition(format!(
                "logged pair {{{u}, {v}}} has degree sum {} < n = {n}",
                degree[u] + degree[v]
            )));
        }
        degree[u] += 1;
        degree[v] += 1;
    }

    let mut current = base.clone();
    for &(u, v) in added.pairs() {
        current.add_edge(u, v);
    }
    if !is_hamiltonian_cycle(&current, cycle.order()) {
        return Err(ScatterError::Precondition(
            "input cycle is not Hamiltonian in the augmented graph".into(),
        ));
    }

    let mut order = cycle.order().to_vec();
    let mut pos = positions(&order);
    for &(u, v) in added.pairs().iter().rev() {
        current.remove_edge(u, v);
        let (pu, pv) = (pos[u], pos[v]);
        // orient the cycle so that v directly follows u
        if order[(pu + 1) % n] == v {
            order.rotate_left(pv);
        } else if order[(pv + 1) % n] == u {
            order.rotate_left(pu);
            order.reverse();
        } else {
            continue;
        }
        debug_assert_eq!((order[0], order[n - 1]), (v, u));
        let i = (0..n - 1)
            .find(|&i| current.has_edge(v, order[i + 1]) && current.has_edge(u, order[i]))
            .ok_or_else(|| {
                ScatterError::Contract(format!(
                    "no rotation index while removing {{{u}, {v}}}"
                ))
            })?;
        order[i + 1..].reverse();
        pos = positions(&order);
    }

    if !is_hamiltonian_cycle(base, &order) {
        return Err(ScatterError::Contract(
            "lifted cycle uses an edge outside the base graph".into(),
        ));
    }
    Tour::new(order)
}

fn positions(order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0; order.len()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    pos
}
