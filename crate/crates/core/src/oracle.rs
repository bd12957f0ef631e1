//! Exact solvers for small instances, used as ground truth.
//!
//! Both work on plain adjacency bitmasks and exact `>=` comparisons, so they
//! share no threshold or tolerance logic with the approximation code.

use crate::error::{Result, ScatterError};
use crate::graph::ThresholdGraph;
use crate::instance::{Instance, Tour};

pub const BRUTE_FORCE_MAX_N: usize = 16;
pub const HAMILTONIAN_MAX_N: usize = 24;

/// Optimal scatter and a tour attaining it.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub opt: f64,
    /// Lexicographically smallest optimal tour starting at point 0.
    pub tour: Tour,
}

/// Exact maximum scatter: binary search over the pairwise distances, each
/// step a Hamiltonicity test of the exact threshold graph.
pub fn brute_force_mstsp(instance: &Instance) -> Result<OracleResult> {
    let n = instance.n();
    if n > BRUTE_FORCE_MAX_N {
        return Err(ScatterError::TooLarge {
            what: "brute-force instance",
            actual: n,
            limit: BRUTE_FORCE_MAX_N,
        });
    }
    let mut values: Vec<f64> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .map(|(i, j)| instance.dist(i, j))
        .collect();
    values.sort_unstable_by(f64::total_cmp);
    values.dedup();

    let cycle_at = |ell: f64| {
        let adj: Vec<u32> = (0..n)
            .map(|u| {
                (0..n)
                    .filter(|&v| v != u && instance.dist(u, v) >= ell)
                    .fold(0, |m, v| m | 1 << v)
            })
            .collect();
        hamiltonian_cycle(&adj)
    };

    // values[0] always admits a cycle: every tour has scatter >= the minimum
    let (mut lo, mut hi) = (0, values.len());
    let mut best = cycle_at(values[0]).expect("complete graph is Hamiltonian");
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        match cycle_at(values[mid]) {
            Some(c) => {
                lo = mid;
                best = c;
            }
            None => hi = mid,
        }
    }
    Ok(OracleResult {
        opt: values[lo],
        tour: Tour::new(best)?,
    })
}

/// A Hamiltonian cycle of `graph` if one exists: the lexicographically
/// smallest one starting at vertex 0.
pub fn is_hamiltonian(graph: &ThresholdGraph) -> Result<Option<Tour>> {
    let n = graph.n();
    if n > HAMILTONIAN_MAX_N {
        return Err(ScatterError::TooLarge {
            what: "Hamiltonicity graph",
            actual: n,
            limit: HAMILTONIAN_MAX_N,
        });
    }
    let adj: Vec<u32> = (0..n)
        .map(|u| graph.neighbors(u).fold(0, |m, v| m | 1 << v))
        .collect();
    hamiltonian_cycle(&adj).map(Tour::new).transpose()
}

/// Subset DP with vertex 0 fixed as the start. `reach[S]` is the set of
/// endpoints `e` such that some path starts at 0, visits exactly
/// `{0} ∪ S`, and ends at `e`. Sets and endpoints are both stored as masks
/// over vertices `1..n`, vertex `v` at bit `v - 1`.
fn hamiltonian_cycle(adj: &[u32]) -> Option<Vec<usize>> {
    let n = adj.len();
    if n < 3 {
        return None;
    }
    let rest = n - 1;
    // neighbors among 1..n, shifted to the subset encoding
    let nb: Vec<u32> = adj.iter().map(|&a| a >> 1).collect();
    let full = (1u32 << rest) - 1;
    let mut reach = vec![0u32; 1 << rest];
    for mask in 1..=full {
        let mut ends = 0;
        let mut bits = mask;
        while bits != 0 {
            let b = bits.trailing_zeros();
            bits &= bits - 1;
            let prev = mask ^ (1 << b);
            let ok = if prev == 0 {
                nb[0] & (1 << b) != 0
            } else {
                reach[prev as usize] & nb[b as usize + 1] != 0
            };
            if ok {
                ends |= 1 << b;
            }
        }
        reach[mask as usize] = ends;
    }
    if reach[full as usize] & nb[0] == 0 {
        return None;
    }

    // greedy smallest next vertex whose remaining set can still be closed
    // back to 0: reversing a witness path of reach[R] ∋ u gives one
    let mut order = vec![0];
    let mut remaining = full;
    let mut current = 0usize;
    while remaining != 0 {
        let options = remaining & reach[remaining as usize] & nb[current];
        let b = options.trailing_zeros();
        debug_assert!(options != 0);
        current = b as usize + 1;
        order.push(current);
        remaining ^= 1 << b;
    }
    Some(order)
}
