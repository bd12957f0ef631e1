//! Hard instances from cubic bipartite graphs.
//!
//! Each vertex gets three blocks of first-order Reed-Muller codewords, one
//! block per color class of a 3-edge coloring. Adjacent vertices end up at
//! Hamming distance `2·2^m`, all other pairs at `3·2^(m-1)`, so the optimal
//! scatter is `2^(m+1)` when the graph is Hamiltonian and `3·2^(m-1)`
//! otherwise.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Result, ScatterError};
use crate::graph::{bipartite_max_matching, ThresholdGraph};
use crate::instance::{Instance, LpNorm};
use crate::oracle::{brute_force_mstsp, is_hamiltonian};

pub const MAX_CODE_PARAM: u32 = 20;
pub const GAP_CHECK_MAX_N: usize = 12;

/// First-order Reed-Muller code: word `a` is the truth table of
/// `x ↦ <a, x> mod 2`, inputs in binary counting order. Words are produced
/// on demand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CodeBook {
    m: u32,
}

pub fn reed_muller(m: u32) -> Result<CodeBook> {
    if !(1..=MAX_CODE_PARAM).contains(&m) {
        return Err(ScatterError::InvalidParameter(format!(
            "code parameter must lie in 1..={MAX_CODE_PARAM}, got {m}"
        )));
    }
    Ok(CodeBook { m })
}

impl CodeBook {
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of words, also their length.
    pub fn len(&self) -> usize {
        1 << self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bit(&self, a: usize, x: usize) -> u8 {
        ((a & x).count_ones() & 1) as u8
    }

    pub fn word(&self, a: usize) -> Vec<u8> {
        assert!(a < self.len(), "word {a} out of range");
        (0..self.len()).map(|x| self.bit(a, x)).collect()
    }

    pub fn words(&self) -> impl Iterator<Item = Vec<u8>> + '_ {
        (0..self.len()).map(|a| self.word(a))
    }
}

/// A simple 3-regular bipartite graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubicBipartiteGraph {
    n: usize,
    /// `true` for the right side. The smallest vertex of every component
    /// is on the left.
    side: Vec<bool>,
    /// Sorted pairs `(u, v)` with `u < v`.
    edges: Vec<(usize, usize)>,
}

impl CubicBipartiteGraph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let invalid = |msg: String| Err(ScatterError::InvalidInstance(msg));
        let mut norm = Vec::with_capacity(edges.len());
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return invalid(format!("edge ({u}, {v}) out of range for {n} vertices"));
            }
            if u == v {
                return invalid(format!("self-loop at {u}"));
            }
            norm.push((u.min(v), u.max(v)));
            adj[u].push(v);
            adj[v].push(u);
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return invalid(format!("repeated edge ({}, {})", w[0].0, w[0].1));
        }
        if let Some(v) = (0..n).find(|&v| adj[v].len() != 3) {
            return invalid(format!("vertex {v} has degree {}, expected 3", adj[v].len()));
        }

        let mut side: Vec<Option<bool>> = vec![None; n];
        for s in 0..n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                let sv = side[v].unwrap();
                for &w in &adj[v] {
                    match side[w] {
                        None => {
                            side[w] = Some(!sv);
                            stack.push(w);
                        }
                        Some(sw) if sw == sv => {
                            return invalid(format!("odd cycle through edge ({v}, {w})"));
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(CubicBipartiteGraph {
            n,
            side: side.into_iter().map(Option::unwrap).collect(),
            edges: norm,
        })
    }

    /// Parses `n` on the first line, then one `u v` pair per line (0-based).
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> std::result::Result<Self, String> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (_, first) = lines.next().ok_or("empty graph file")?;
        let n: usize = first
            .parse()
            .map_err(|_| format!("line 1: expected a vertex count, got {first:?}"))?;
        let mut edges = Vec::new();
        for (no, line) in lines {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| format!("line {no}: expected two vertex ids, got {line:?}"))?;
            match nums[..] {
                [u, v] => edges.push((u, v)),
                _ => return Err(format!("line {no}: expected two vertex ids, got {line:?}")),
            }
        }
        CubicBipartiteGraph::new(n, &edges).map_err(|e| e.to_string())
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for &(u, v) in &self.edges {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_right(&self, v: usize) -> bool {
        self.side[v]
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    pub fn to_graph(&self) -> ThresholdGraph {
        ThresholdGraph::from_edges(self.n, &self.edges).expect("validated edges")
    }
}

pub fn read_graph(path: impl AsRef<Path>) -> Result<CubicBipartiteGraph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| ScatterError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    CubicBipartiteGraph::parse(&text).map_err(|message| ScatterError::Parse {
        path: path.to_path_buf(),
        message,
    })
}

/// Splits the edges into three perfect matchings, each as `(left, right)`
/// pairs sorted by left vertex. A `r`-regular bipartite graph always has a
/// perfect matching, and removing one leaves an `(r-1)`-regular graph.
pub fn edge_color_cubic_bipartite(graph: &CubicBipartiteGraph) -> Result<[Vec<(usize, usize)>; 3]> {
    let n = graph.n;
    let mut index = vec![0; n];
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for v in 0..n {
        let list = if graph.side[v] { &mut right } else { &mut left };
        index[v] = list.len();
        list.push(v);
    }
    if left.len() != right.len() {
        return Err(ScatterError::InvalidInstance(format!(
            "unbalanced sides: {} left, {} right",
            left.len(),
            right.len()
        )));
    }
    let mut remaining: Vec<(usize, usize)> = graph
        .edges
        .iter()
        .map(|&(u, v)| if graph.side[u] { (index[v], index[u]) } else { (index[u], index[v]) })
        .collect();

    let mut colors: [Vec<(usize, usize)>; 3] = Default::default();
    for color in &mut colors {
        let matching = bipartite_max_matching(left.len(), right.len(), &remaining);
        if matching.len() != left.len() {
            return Err(ScatterError::Contract(format!(
                "regular bipartite graph without a perfect matching ({} of {})",
                matching.len(),
                left.len()
            )));
        }
        remaining.retain(|e| matching.binary_search(e).is_err());
        *color = matching.iter().map(|&(l, r)| (left[l], right[r])).collect();
    }
    Ok(colors)
}

/// Per-vertex 0/1 vectors of length `3·2^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labeling {
    pub m: u32,
    pub labels: Vec<Vec<u8>>,
}

/// Smallest `m >= 1` with `2^m >= n/2`.
pub fn code_param_for(n: usize) -> u32 {
    let mut m = 1;
    while (1usize << m) < n.div_ceil(2) {
        m += 1;
    }
    m
}

/// Labels the vertices and returns them as a Hamming instance. In color
/// class `i`, the `k`-th edge `{u, v}` (u on the left) puts word `k` in block
/// `i` of `u` and its complement in block `i` of `v`.
pub fn embed(graph: &CubicBipartiteGraph) -> Result<(Labeling, Instance)> {
    let colors = edge_color_cubic_bipartite(graph)?;
    let m = code_param_for(graph.n);
    let code = reed_muller(m)?;
    let block = code.len();
    let mut labels = vec![vec![0u8; 3 * block]; graph.n];
    for (i, matching) in colors.iter().enumerate() {
        for (k, &(u, v)) in matching.iter().enumerate() {
            for x in 0..block {
                let b = code.bit(k, x);
                labels[u][i * block + x] = b;
                labels[v][i * block + x] = 1 - b;
            }
        }
    }
    let instance = Instance::hamming(&labels)?;
    Ok((Labeling { m, labels }, instance))
}

/// Outcome of [`gap_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct GapReport {
    pub hamiltonian: bool,
    pub m: u32,
    pub adjacent_distance: f64,
    pub non_adjacent_distance: f64,
    /// Oracle optimum of the embedded Hamming instance.
    pub opt: f64,
    /// `3·2^(m-1) / 2^(m+1)`.
    pub hamming_ratio: f64,
    /// `(p, ratio)` of the same vectors under the ℓp norm.
    pub lp_ratios: Vec<(f64, f64)>,
}

/// Embeds `graph`, solves the embedded instance exactly and checks the
/// distance dichotomy and the optimum it predicts. A mismatch is reported
/// as [`ScatterError::Contract`].
pub fn gap_check(graph: &CubicBipartiteGraph) -> Result<GapReport> {
    let n = graph.n;
    if n > GAP_CHECK_MAX_N {
        return Err(ScatterError::TooLarge {
            what: "gap-check graph",
            actual: n,
            limit: GAP_CHECK_MAX_N,
        });
    }
    let (labeling, instance) = embed(graph)?;
    let m = labeling.m;
    let near = (1u64 << (m + 1)) as f64;
    let far = (3u64 << (m - 1)) as f64;
    let fail = |msg: String| Err(ScatterError::Contract(msg));

    for u in 0..n {
        for v in (u + 1)..n {
            let want = if graph.has_edge(u, v) { near } else { far };
            let d = instance.dist(u, v);
            if d != want {
                return fail(format!("pair ({u}, {v}) at distance {d}, expected {want}"));
            }
        }
    }

    let hamiltonian = is_hamiltonian(&graph.to_graph())?.is_some();
    let opt = brute_force_mstsp(&instance)?.opt;
    let expected = if hamiltonian { near } else { far };
    if opt != expected {
        return fail(format!("embedded optimum {opt}, expected {expected}"));
    }

    let mut lp_ratios = Vec::new();
    for p in [1.0, 2.0] {
        let lp = instance.with_norm(LpNorm::P(p))?;
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for u in 0..n {
            for v in (u + 1)..n {
                let d = lp.dist(u, v);
                lo = lo.min(d);
                hi = hi.max(d);
            }
        }
        lp_ratios.push((p, lo / hi));
    }
    Ok(GapReport {
        hamiltonian,
        m,
        adjacent_distance: near,
        non_adjacent_distance: far,
        opt,
        hamming_ratio: far / near,
        lp_ratios,
    })
}

/// First non-Hamiltonian cubic bipartite graph with at most `max_n`
/// vertices, in order of size and then of a lexicographic enumeration where
/// left vertices `0..h` pick their right neighbors among `h..2h`.
pub fn find_non_hamiltonian_cubic_bipartite(max_n: usize) -> Result<Option<CubicBipartiteGraph>> {
    for h in 3..=max_n / 2 {
        let mut right_deg = vec![0u8; h];
        let mut picks: Vec<[usize; 3]> = Vec::with_capacity(h);
        if let Some(g) = search_side(h, &mut picks, &mut right_deg)? {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

fn search_side(
    h: usize,
    picks: &mut Vec<[usize; 3]>,
    right_deg: &mut [u8],
) -> Result<Option<CubicBipartiteGraph>> {
    if picks.len() == h {
        let edges: Vec<(usize, usize)> = picks
            .iter()
            .enumerate()
            .flat_map(|(l, rs)| rs.iter().map(move |&r| (l, h + r)))
            .collect();
        let g = CubicBipartiteGraph::new(2 * h, &edges)?;
        return Ok(is_hamiltonian(&g.to_graph())?.is_none().then_some(g));
    }
    // right slots still open must be fillable by the remaining left vertices
    let left_after = h - picks.len() - 1;
    for a in 0..h {
        for b in (a + 1)..h {
            for c in (b + 1)..h {
                let trio = [a, b, c];
                if trio.iter().any(|&r| right_deg[r] == 3) {
                    continue;
                }
                trio.iter().for_each(|&r| right_deg[r] += 1);
                let open: usize = right_deg.iter().map(|&d| 3 - d as usize).sum();
                if open == 3 * left_after {
                    picks.push(trio);
                    let found = search_side(h, picks, right_deg)?;
                    picks.pop();
                    if found.is_some() {
                        return Ok(found);
                    }
                }
                trio.iter().for_each(|&r| right_deg[r] -= 1);
            }
        }
    }
    Ok(None)
}
