use std::collections::BTreeMap;

use crate::error::{Result, ScatterError};

/// Loopless multigraph on `0..k` with integer edge multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Multigraph {
    k: usize,
    multiplicity: BTreeMap<(usize, usize), u64>,
}

impl Multigraph {
    pub fn new(k: usize) -> Self {
        Multigraph {
            k,
            multiplicity: BTreeMap::new(),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn key(u: usize, v: usize) -> (usize, usize) {
        (u.min(v), u.max(v))
    }

    /// Adds `count` copies of edge `{u, v}`.
    pub fn add(&mut self, u: usize, v: usize, count: u64) -> Result<()> {
        if u == v {
            return Err(ScatterError::InvalidParameter(format!("self-loop at {u}")));
        }
        if u >= self.k || v >= self.k {
            return Err(ScatterError::IndexOutOfRange {
                index: u.max(v),
                len: self.k,
            });
        }
        if count > 0 {
            *self.multiplicity.entry(Self::key(u, v)).or_insert(0) += count;
        }
        Ok(())
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> u64 {
        self.multiplicity.get(&Self::key(u, v)).copied().unwrap_or(0)
    }

    /// Edges with positive multiplicity, `(u, v, m)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.multiplicity
            .iter()
            .filter(|(_, &m)| m > 0)
            .map(|(&(u, v), &m)| (u, v, m))
    }

    pub fn degree(&self, v: usize) -> u64 {
        self.edges()
            .filter(|&(a, b, _)| a == v || b == v)
            .map(|(_, _, m)| m)
            .sum()
    }

    pub fn degrees(&self) -> Vec<u64> {
        let mut deg = vec![0; self.k];
        for (u, v, m) in self.edges() {
            deg[u] += m;
            deg[v] += m;
        }
        deg
    }

    pub fn total_edges(&self) -> u64 {
        self.edges().map(|(_, _, m)| m).sum()
    }

    /// Whether the positive-multiplicity edges connect every vertex of
    /// positive degree.
    pub fn support_connected(&self) -> bool {
        let deg = self.degrees();
        let mut parent: Vec<usize> = (0..self.k).collect();
        for (u, v, _) in self.edges() {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            parent[a] = b;
        }
        let mut roots = (0..self.k)
            .filter(|&v| deg[v] > 0)
            .map(|v| find(&mut parent, v));
        match roots.next() {
            None => true,
            Some(r) => roots.all(|x| x == r),
        }
    }

    /// Whether the support connects all `k` vertices.
    pub fn support_spans(&self) -> bool {
        self.degrees().iter().all(|&d| d > 0) && self.support_connected()
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Closed walk traversing every edge exactly its multiplicity many times
/// (Hierholzer). The returned sequence starts and ends at the same vertex,
/// so its length is the number of traversals plus one; an edgeless graph
/// yields an empty walk.
pub fn eulerian_tour(graph: &Multigraph) -> Result<Vec<usize>> {
    let deg = graph.degrees();
    if let Some(v) = (0..graph.k).find(|&v| deg[v] % 2 == 1) {
        return Err(ScatterError::Precondition(format!(
            "vertex {v} has odd degree {}",
            deg[v]
        )));
    }
    if !graph.support_connected() {
        return Err(ScatterError::Precondition(
            "positive-multiplicity edges are disconnected".into(),
        ));
    }
    let Some(start) = (0..graph.k).find(|&v| deg[v] > 0) else {
        return Ok(Vec::new());
    };

    let edges: Vec<(usize, usize)> = graph.edges().map(|(u, v, _)| (u, v)).collect();
    let mut remaining: Vec<u64> = graph.edges().map(|(_, _, m)| m).collect();
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); graph.k];
    for (id, &(u, v)) in edges.iter().enumerate() {
        incident[u].push(id);
        incident[v].push(id);
    }
    let mut cursor = vec![0usize; graph.k];
    let total = graph.total_edges() as usize;

    let mut walk = Vec::with_capacity(total + 1);
    let mut stack = vec![start];
    while let Some(&v) = stack.last() {
        while cursor[v] < incident[v].len() && remaining[incident[v][cursor[v]]] == 0 {
            cursor[v] += 1;
        }
        if cursor[v] == incident[v].len() {
            walk.push(v);
            stack.pop();
        } else {
            let id = incident[v][cursor[v]];
            remaining[id] -= 1;
            let (a, b) = edges[id];
            stack.push(if a == v { b } else { a });
        }
    }
    walk.reverse();
    debug_assert_eq!(walk.len(), total + 1);
    Ok(walk)
}
