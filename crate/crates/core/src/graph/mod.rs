//! Threshold graphs and the Hamiltonicity machinery built on them.

mod closure;
mod dirac;
mod euler;
mod matching;
mod normalize;

pub use closure::{bc_lift, bondy_chvatal_closure, bondy_chvatal_closure_ordered, EdgeAdditionLog};
pub use dirac::{dirac_hamiltonian, is_hamiltonian_cycle};
pub use euler::{eulerian_tour, Multigraph};
pub use matching::bipartite_max_matching;
pub use normalize::{normalize_tour, Normalization};

use std::fmt;

use crate::error::{Result, ScatterError};
use crate::exec::{self, Parallelism};
use crate::instance::{at_least, Instance};

/// Simple undirected graph on `0..n` stored as a bit matrix.
///
/// Built either from a point set at a length threshold (edge iff the pair is
/// at least that far apart) or from an explicit edge list.
#[derive(Clone, PartialEq, Eq)]
pub struct ThresholdGraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    threshold: Option<OrderedLength>,
}

// f64 wrapper so the graph can derive Eq; the threshold is informational.
#[derive(Clone, Copy, Debug, PartialEq)]
struct OrderedLength(f64);
impl Eq for OrderedLength {}

impl ThresholdGraph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        ThresholdGraph {
            n,
            words,
            bits: vec![0; n * words],
            threshold: None,
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(ScatterError::IndexOutOfRange {
                    index: u.max(v),
                    len: n,
                });
            }
            if u == v {
                return Err(ScatterError::InvalidParameter(format!(
                    "self-loop at vertex {u}"
                )));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Length the graph was built from, if any.
    pub fn threshold(&self) -> Option<f64> {
        self.threshold.map(|t| t.0)
    }

    #[inline]
    fn row(&self, u: usize) -> &[u64] {
        &self.bits[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        (self.bits[u * self.words + v / 64] >> (v % 64)) & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] &= !(1 << (v % 64));
        self.bits[v * self.words + u / 64] &= !(1 << (u % 64));
    }

    pub fn degree(&self, u: usize) -> usize {
        self.row(u).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|u| self.degree(u)).collect()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).min().unwrap_or(0)
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(u).iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + bit)
            })
        })
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|u| self.degree(u)).sum::<usize>() / 2
    }

    pub fn is_complete(&self) -> bool {
        (0..self.n).all(|u| self.degree(u) + 1 == self.n)
    }
}

impl fmt::Debug for ThresholdGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Edge-list text form: a header line, then one `u v` line per edge.
impl fmt::Display for ThresholdGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} m={}", self.n, self.edge_count())?;
        if let Some(t) = self.threshold() {
            write!(f, " threshold={t}")?;
        }
        writeln!(f)?;
        for (u, v) in self.edges() {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

/// Graph on the points with an edge iff `d(i, j) >= ell` (up to the global
/// tolerance).
pub fn threshold_graph(instance: &Instance, ell: f64) -> ThresholdGraph {
    threshold_graph_with(instance, ell, Parallelism::default())
}

pub fn threshold_graph_with(instance: &Instance, ell: f64, par: Parallelism) -> ThresholdGraph {
    let n = instance.n();
    let words = n.div_ceil(64).max(1);
    // Each worker fills the upper triangle of one row; mirroring happens after.
    let upper = exec::map_indices(n, par, |i| {
        let mut row = vec![0u64; words];
        for j in (i + 1)..n {
            if at_least(instance.dist(i, j), ell) {
                row[j / 64] |= 1 << (j % 64);
            }
        }
        row
    });
    let mut bits = upper.concat();
    for i in 0..n {
        for w in (i + 1) / 64..words {
            let mut word = bits[i * words + w];
            if w == (i + 1) / 64 {
                word &= !0u64 << ((i + 1) % 64);
            }
            while word != 0 {
                let j = w * 64 + word.trailing_zeros() as usize;
                word &= word - 1;
                bits[j * words + i / 64] |= 1 << (i % 64);
            }
        }
    }
    ThresholdGraph {
        n,
        words,
        bits,
        threshold: Some(OrderedLength(ell)),
    }
}
