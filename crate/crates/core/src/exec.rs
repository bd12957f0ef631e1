//! Data-parallel helpers with a sequential fallback.
//!
//! The O(n²) sweeps in this crate (threshold graphs, ball counts, candidate
//! enumeration) go through these helpers. With the `parallel` feature they
//! run on rayon's global pool when asked to; without it every call is
//! sequential regardless of the requested mode.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution mode for the O(n²) kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parallelism {
    Sequential,
    Parallel,
}

impl Default for Parallelism {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Parallelism::Parallel
        } else {
            Parallelism::Sequential
        }
    }
}

impl Parallelism {
    /// Whether this mode actually runs in parallel in the current build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Parallelism::Parallel
    }
}

/// `(0..n).map(f).collect()`, possibly in parallel. Output order is index order.
pub(crate) fn map_indices<T, F>(n: usize, par: Parallelism, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = par;
    (0..n).map(f).collect()
}

/// Lowest index in `0..n` satisfying `pred`.
pub(crate) fn find_first_index<F>(n: usize, par: Parallelism, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.is_parallel() {
        return (0..n).into_par_iter().find_first(|&i| pred(i));
    }
    let _ = par;
    (0..n).find(|&i| pred(i))
}

/// Sum of `f(i)` over `0..n`.
pub(crate) fn sum_indices<F>(n: usize, par: Parallelism, f: F) -> u64
where
    F: Fn(usize) -> u64 + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if par.is_parallel() {
        return (0..n).into_par_iter().map(f).sum();
    }
    let _ = par;
    (0..n).map(f).sum()
}
