//! Closed walks on a small graph with prescribed visit counts.
//!
//! A closed walk visiting vertex `v` exactly `n_v` times exists iff there is
//! a loopless multigraph on the allowed edges with degree `2 n_v` at every
//! vertex whose support is connected (it then has an Euler tour). Orienting
//! such a multigraph along its Euler tour gives a circulation with in- and
//! out-flow `n_v` at every vertex, so the degree part is a transportation
//! problem on the bipartite double cover and is solved by max-flow.
//!
//! Connectivity is enforced by branching: if the flow's support splits,
//! some arc leaving one of its components must carry flow in any connected
//! solution, so each such arc is tried in turn as a lower bound of one. The
//! forced arcs always join distinct components of the forced-arc forest, so
//! the branching depth is below `k`.

mod flow;

use std::collections::HashSet;

use crate::error::{Result, ScatterError};
use crate::graph::{eulerian_tour, Multigraph, ThresholdGraph};

use flow::{FlowNetwork, INF};

/// Problem statement: allowed edges plus per-vertex visit counts.
#[derive(Clone, Debug, PartialEq)]
pub struct VisitSpec {
    allowed: ThresholdGraph,
    visits: Vec<u64>,
}

impl VisitSpec {
    pub fn new(allowed: ThresholdGraph, visits: Vec<u64>) -> Result<Self> {
        let k = allowed.n();
        if k == 0 {
            return Err(ScatterError::InvalidParameter(
                "many-visits spec needs at least one vertex".into(),
            ));
        }
        if visits.len() != k {
            return Err(ScatterError::InvalidParameter(format!(
                "{} visit counts for {k} vertices",
                visits.len()
            )));
        }
        if let Some(v) = visits.iter().position(|&c| c == 0) {
            return Err(ScatterError::InvalidParameter(format!(
                "vertex {v} has zero visits"
            )));
        }
        Ok(VisitSpec { allowed, visits })
    }

    pub fn k(&self) -> usize {
        self.visits.len()
    }

    pub fn allowed(&self) -> &ThresholdGraph {
        &self.allowed
    }

    pub fn visits(&self) -> &[u64] {
        &self.visits
    }

    pub fn total_visits(&self) -> u64 {
        self.visits.iter().sum()
    }
}

/// `pattern` repeated `repeat` times.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Run {
    pub pattern: Vec<usize>,
    pub repeat: u64,
}

/// A feasible many-visits solution: edge multiplicities plus a
/// run-length-compressed closed walk realizing them.
#[derive(Clone, Debug, PartialEq)]
pub struct Multiwalk {
    multiplicities: Multigraph,
    runs: Vec<Run>,
}

impl Multiwalk {
    pub fn multiplicities(&self) -> &Multigraph {
        &self.multiplicities
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    /// Length of the expanded walk (total visits).
    pub fn len(&self) -> u64 {
        self.runs
            .iter()
            .map(|r| r.pattern.len() as u64 * r.repeat)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The expanded cyclic walk, lazily. Consecutive entries (and last to
    /// first) are allowed edges.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.runs.iter().flat_map(|r| {
            std::iter::repeat_n(r.pattern.as_slice(), r.repeat as usize)
                .flatten()
                .copied()
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Per-vertex visit counts, computed from the runs without expansion.
    pub fn visit_counts(&self) -> Vec<u64> {
        let mut counts = vec![0; self.multiplicities.k()];
        for r in &self.runs {
            for &v in &r.pattern {
                counts[v] += r.repeat;
            }
        }
        counts
    }

    /// Edge traversal counts of the cyclic walk, computed from the runs
    /// without expansion. Errors on a self-transition.
    pub fn traversals(&self) -> Result<Multigraph> {
        let mut g = Multigraph::new(self.multiplicities.k());
        let runs: Vec<&Run> = self.runs.iter().filter(|r| r.repeat > 0 && !r.pattern.is_empty()).collect();
        for r in &runs {
            for w in r.pattern.windows(2) {
                g.add(w[0], w[1], r.repeat)?;
            }
            if r.repeat > 1 {
                g.add(*r.pattern.last().unwrap(), r.pattern[0], r.repeat - 1)?;
            }
        }
        for i in 0..runs.len() {
            let next = runs[(i + 1) % runs.len()];
            g.add(*runs[i].pattern.last().unwrap(), next.pattern[0], 1)?;
        }
        Ok(g)
    }

    /// Checks every invariant of a solution to `spec` without expanding the
    /// walk: degrees `2 n_v`, allowed support spanning all vertices, visit
    /// counts, and runs that traverse each edge exactly its multiplicity.
    pub fn verify(&self, spec: &VisitSpec) -> Result<()> {
        let fail = |msg: String| Err(ScatterError::Contract(msg));
        let m = &self.multiplicities;
        if m.k() != spec.k() {
            return fail(format!("walk over {} vertices, spec has {}", m.k(), spec.k()));
        }
        for (u, v, _) in m.edges() {
            if !spec.allowed.has_edge(u, v) {
                return fail(format!("multiplicity on disallowed edge {{{u}, {v}}}"));
            }
        }
        let deg = m.degrees();
        for v in 0..spec.k() {
            if deg[v] != 2 * spec.visits[v] {
                return fail(format!(
                    "vertex {v} has degree {} but needs {}",
                    deg[v],
                    2 * spec.visits[v]
                ));
            }
        }
        if !m.support_spans() {
            return fail("support does not connect all vertices".into());
        }
        if self.visit_counts() != spec.visits {
            return fail("walk visit counts differ from the spec".into());
        }
        if spec.k() > 1 && self.traversals()? != *m {
            return fail("walk traversals differ from the multiplicities".into());
        }
        Ok(())
    }
}

/// Finds a closed walk visiting vertex `v` exactly `visits[v]` times using
/// only allowed edges, or `None` when none exists. Exact for every spec;
/// deterministic for a fixed spec.
pub fn many_visits_tour(spec: &VisitSpec) -> Result<Option<Multiwalk>> {
    let k = spec.k();
    if k == 1 || !allowed_connected(&spec.allowed) {
        return Ok(None);
    }
    let Some(arcs) = Search::new(spec).run() else {
        return Ok(None);
    };
    let mut multiplicities = Multigraph::new(k);
    for (u, row) in arcs.iter().enumerate() {
        for (v, &count) in row.iter().enumerate() {
            if count > 0 {
                multiplicities.add(u, v, count)?;
            }
        }
    }
    let runs = compress_walk(&multiplicities)?;
    let walk = Multiwalk {
        multiplicities,
        runs,
    };
    walk.verify(spec)?;
    Ok(Some(walk))
}

fn allowed_connected(g: &ThresholdGraph) -> bool {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in g.neighbors(v) {
            if !std::mem::replace(&mut seen[w], true) {
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

type ArcCounts = Vec<Vec<u64>>;

struct Search<'a> {
    spec: &'a VisitSpec,
    /// Allowed ordered pairs.
    arcs: Vec<(usize, usize)>,
    tried: HashSet<Vec<(usize, usize)>>,
}

impl<'a> Search<'a> {
    fn new(spec: &'a VisitSpec) -> Self {
        let k = spec.k();
        let arcs = (0..k)
            .flat_map(|u| (0..k).map(move |v| (u, v)))
            .filter(|&(u, v)| spec.allowed.has_edge(u, v))
            .collect();
        Search {
            spec,
            arcs,
            tried: HashSet::new(),
        }
    }

    fn run(&mut self) -> Option<ArcCounts> {
        self.branch(Vec::new())
    }

    fn branch(&mut self, forced: Vec<(usize, usize)>) -> Option<ArcCounts> {
        let x = self.circulation(&forced)?;
        let comps = support_components(&x);
        if comps.len() == 1 {
            return Some(x);
        }
        // smallest component first keeps the fan-out low
        let side = comps.iter().min_by_key(|c| (c.len(), c[0])).unwrap();
        let mut inside = vec![false; self.spec.k()];
        for &v in side {
            inside[v] = true;
        }
        let leaving: Vec<(usize, usize)> = self
            .arcs
            .iter()
            .copied()
            .filter(|&(u, v)| inside[u] && !inside[v])
            .collect();
        for arc in leaving {
            let mut next = forced.clone();
            next.push(arc);
            next.sort_unstable();
            if !self.tried.insert(next.clone()) {
                continue;
            }
            if let Some(x) = self.branch(next) {
                return Some(x);
            }
        }
        None
    }

    /// Integer circulation with in = out = visits[v] and at least one unit
    /// on every forced arc.
    fn circulation(&self, forced: &[(usize, usize)]) -> Option<ArcCounts> {
        let k = self.spec.k();
        let mut supply = self.spec.visits.clone();
        let mut demand = self.spec.visits.clone();
        for &(u, v) in forced {
            supply[u] = supply[u].checked_sub(1)?;
            demand[v] = demand[v].checked_sub(1)?;
        }
        let (source, sink) = (0, 2 * k + 1);
        let mut net = FlowNetwork::new(2 * k + 2);
        for v in 0..k {
            net.add_arc(source, 1 + v, supply[v]);
            net.add_arc(1 + k + v, sink, demand[v]);
        }
        let ids: Vec<usize> = self
            .arcs
            .iter()
            .map(|&(u, v)| net.add_arc(1 + u, 1 + k + v, INF))
            .collect();
        let need: u64 = supply.iter().sum();
        if net.max_flow(source, sink) != need {
            return None;
        }
        let mut x = vec![vec![0u64; k]; k];
        for (&(u, v), &id) in self.arcs.iter().zip(&ids) {
            x[u][v] = net.flow(id);
        }
        for &(u, v) in forced {
            x[u][v] += 1;
        }
        Some(x)
    }
}

/// Connected components (sorted vertex lists) of the undirected support.
fn support_components(x: &ArcCounts) -> Vec<Vec<usize>> {
    let k = x.len();
    let mut comp = vec![usize::MAX; k];
    let mut out = Vec::new();
    for s in 0..k {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for w in 0..k {
                if comp[w] == usize::MAX && x[v][w] + x[w][v] > 0 {
                    comp[w] = id;
                    members.push(w);
                    stack.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Run-length walk for a connected multigraph with all degrees even.
///
/// Multiplicities above two are cut to 1 or 2 (same parity); an Euler tour
/// of the reduced graph forms the skeleton, and each removed pair of
/// traversals of `{a, b}` becomes a back-and-forth `b, a` excursion inserted
/// after the first visit of `a`.
fn compress_walk(m: &Multigraph) -> Result<Vec<Run>> {
    let k = m.k();
    let mut reduced = Multigraph::new(k);
    let mut excursions: Vec<Vec<(usize, u64)>> = vec![Vec::new(); k];
    for (a, b, mult) in m.edges() {
        let keep = if mult <= 2 { mult } else { 2 - mult % 2 };
        reduced.add(a, b, keep)?;
        if mult > keep {
            excursions[a].push((b, (mult - keep) / 2));
        }
    }
    let mut skeleton = eulerian_tour(&reduced)?;
    skeleton.pop();

    let mut runs = Vec::new();
    let mut plain = Vec::new();
    let mut seen = vec![false; k];
    for v in skeleton {
        plain.push(v);
        if !std::mem::replace(&mut seen[v], true) && !excursions[v].is_empty() {
            runs.push(Run {
                pattern: std::mem::take(&mut plain),
                repeat: 1,
            });
            for &(b, t) in &excursions[v] {
                runs.push(Run {
                    pattern: vec![b, v],
                    repeat: t,
                });
            }
        }
    }
    if !plain.is_empty() {
        runs.push(Run {
            pattern: plain,
            repeat: 1,
        });
    }
    Ok(runs)
}
