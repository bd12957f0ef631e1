use super::ThresholdGraph;
use crate::error::{Result, ScatterError};
use crate::instance::Tour;

/// Hamiltonian cycle of a graph with minimum degree at least `n/2`.
///
/// Starts from the identity order and repairs one cyclic non-edge at a time:
/// with the cycle read as a path `a = x_0, ..., x_{n-1} = b` whose ends are
/// not adjacent, pick `j` with `a ~ x_{j+1}` and `b ~ x_j` and reverse the
/// suffix after `x_j`. Each repair removes at least one non-edge, so there
/// are at most `n` repairs of O(n) each.
pub fn dirac_hamiltonian(graph: &ThresholdGraph) -> Result<Tour> {
    let n = graph.n();
    if n < 3 {
        return Err(ScatterError::Precondition(format!(
            "a Hamiltonian cycle needs at least 3 vertices, got {n}"
        )));
    }
    if let Some(v) = (0..n).find(|&v| 2 * graph.degree(v) < n) {
        return Err(ScatterError::Precondition(format!(
            "vertex {v} has degree {} < n/2 = {}",
            graph.degree(v),
            n as f64 / 2.0
        )));
    }

    let mut cycle: Vec<usize> = (0..n).collect();
    let mut repairs = 0;
    while let Some(i) = next_gap(graph, &cycle) {
        // rotate so the broken pair becomes (x_{n-1}, x_0)
        cycle.rotate_left((i + 1) % n);
        let a = cycle[0];
        let b = cycle[n - 1];
        let j = (0..n - 1)
            .find(|&j| graph.has_edge(a, cycle[j + 1]) && graph.has_edge(b, cycle[j]))
            .ok_or_else(|| {
                ScatterError::Contract(format!(
                    "no exchange index for non-edge {{{b}, {a}}} despite the degree condition"
                ))
            })?;
        cycle[j + 1..].reverse();
        repairs += 1;
        if repairs > n {
            return Err(ScatterError::Contract(
                "Dirac repair loop exceeded n iterations".into(),
            ));
        }
    }
    Tour::new(cycle)
}

/// First position `i` whose cyclic pair `(cycle[i], cycle[i+1])` is not an edge.
fn next_gap(graph: &ThresholdGraph, cycle: &[usize]) -> Option<usize> {
    let n = cycle.len();
    (0..n).find(|&i| !graph.has_edge(cycle[i], cycle[(i + 1) % n]))
}

/// Independent validator: `order` is a permutation of `0..n` and every
/// cyclic pair is an edge.
pub fn is_hamiltonian_cycle(graph: &ThresholdGraph, order: &[usize]) -> bool {
    let n = graph.n();
    if order.len() != n || n < 3 {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    (0..n).all(|i| graph.has_edge(order[i], order[(i + 1) % n]))
}
