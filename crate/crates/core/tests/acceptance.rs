//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any failed.
//!
//! Ground truth comes from the helpers at the bottom of this file, which
//! share no code with the library beyond distance evaluation.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use scatter_tsp::generate::{generate, GenParams, GeneratorKind};
use scatter_tsp::graph::{
    bc_lift, bondy_chvatal_closure, dirac_hamiltonian, normalize_tour, ThresholdGraph,
};
use scatter_tsp::hardness::{embed, find_non_hamiltonian_cubic_bipartite, CubicBipartiteGraph};
use scatter_tsp::many_visits::{many_visits_tour, VisitSpec};
use scatter_tsp::net::{greedy_delta_net, round_to_grid};
use scatter_tsp::{
    decide_scatter, maximize_scatter, scatter, Branch, DecisionParams, Instance, LpNorm, Tour,
};

const TOL: f64 = 1e-9;

fn main() {
    let criteria: [(&str, fn() -> String); 9] = [
        ("1 oracle equivalence of maximize_scatter", c1_oracle_equivalence),
        ("2 decision soundness and completeness", c2_decision_contract),
        ("3 exchange normalization", c3_normalization),
        ("4 many-visits exactness", c4_many_visits),
        ("5 delta-net cover and packing", c5_nets),
        ("6 grid rounding inequality", c6_grid_rounding),
        ("7 hardness dichotomy", c7_hardness),
        ("8 scale test n=10000", c8_scale),
        ("9 graph-kit properties", c9_graph_kit),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {name}: PASS ({secs:.2}s) {detail}"),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {name}: FAIL ({secs:.2}s) {msg}");
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}

// ---------------------------------------------------------------- corpus

struct Case {
    instance: Instance,
    epsilon: f64,
    opt: f64,
    dim: usize,
}

/// 540 instances: n in 5..=10, d in 1..=3, ℓ1/ℓ2/ℓ∞, three epsilons, and a
/// mix of uniform, clustered and integer-grid shapes.
fn corpus() -> Vec<Case> {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let norms = [LpNorm::P(1.0), LpNorm::P(2.0), LpNorm::Infinity];
    let epsilons = [0.05, 0.1, 0.3];
    (0..540)
        .map(|i| {
            let n = 5 + i % 6;
            let dim = 1 + (i / 6) % 3;
            let norm = norms[(i / 18) % 3];
            let epsilon = epsilons[(i / 54) % 3];
            let points = random_points(&mut rng, n, dim, i % 4);
            let instance = Instance::lp(norm, points).unwrap();
            let opt = bottleneck_opt(n, |a, b| instance.dist(a, b));
            Case {
                instance,
                epsilon,
                opt,
                dim,
            }
        })
        .collect()
}

fn random_points(rng: &mut ChaCha8Rng, n: usize, dim: usize, shape: usize) -> Vec<Vec<f64>> {
    let mut uniform = |scale: f64| -> Vec<f64> { (0..dim).map(|_| rng.random::<f64>() * scale).collect() };
    match shape {
        0 => (0..n).map(|_| uniform(1.0)).collect(),
        // integer grid: many tied distances
        1 => (0..n)
            .map(|_| uniform(4.0).into_iter().map(f64::floor).collect())
            .collect(),
        // a heavy cluster around the origin, the rest far away
        2 => {
            let heavy = n / 2 + 1;
            (0..n)
                .map(|i| if i < heavy { uniform(0.3) } else { uniform(1.0).into_iter().map(|c| 5.0 + 5.0 * c).collect() })
                .collect()
        }
        // two scales of clustering
        _ => (0..n)
            .map(|i| {
                let base = (i % 3) as f64 * 2.0;
                uniform(0.5).into_iter().map(|c| c + base).collect()
            })
            .collect(),
    }
}

fn c1_oracle_equivalence() -> String {
    let mut branch_counts = [0usize; 2];
    let mut worst_ratio = f64::INFINITY;
    let mut net_log = Vec::new();
    let cases = corpus();
    for (idx, case) in cases.iter().enumerate() {
        let best = maximize_scatter(&case.instance, case.epsilon).unwrap();
        let s = scatter(&case.instance, &best.tour).unwrap();
        assert_eq!(s, best.witness_scatter, "case {idx}: reported scatter");
        assert!(
            s >= (1.0 - case.epsilon) * case.opt - TOL,
            "case {idx}: scatter {s} < (1-{})·{}",
            case.epsilon,
            case.opt
        );
        assert!(s <= case.opt + TOL, "case {idx}: scatter {s} exceeds optimum {}", case.opt);
        assert!(best.ell_hat >= case.opt - TOL, "case {idx}: ell_hat {} below optimum", best.ell_hat);
        assert!(is_pairwise_distance(&case.instance, best.ell_hat), "case {idx}");
        branch_counts[usize::from(best.branch == Branch::ManyVisits)] += 1;
        if case.opt > 0.0 {
            worst_ratio = worst_ratio.min(s / case.opt);
        }
        if let Some(k) = best.max_net_size {
            net_log.push((k, (13.0 / case.epsilon).powi(case.dim as i32)));
        }
    }
    let max_net = net_log.iter().map(|&(k, _)| k).max().unwrap_or(0);
    assert!(net_log.iter().all(|&(k, bound)| (k as f64) <= bound));
    format!(
        "{} instances, worst scatter/OPT {worst_ratio:.4}, final branch dirac/many_visits {}/{}, \
         max net size {max_net} (bound (13/eps)^d >= {:.0})",
        cases.len(),
        branch_counts[0],
        branch_counts[1],
        net_log.iter().map(|&(_, b)| b).fold(f64::INFINITY, f64::min)
    )
}

fn c2_decision_contract() -> String {
    let mut decisions = 0;
    let mut yes = [0usize; 2];
    for (idx, case) in corpus().iter().enumerate() {
        let inst = &case.instance;
        let n = inst.n();
        let mut ells: Vec<f64> = (0..n)
            .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
            .map(|(i, j)| inst.dist(i, j))
            .filter(|&d| d > 0.0)
            .collect();
        ells.sort_by(f64::total_cmp);
        ells.dedup();
        for ell in ells {
            let params = DecisionParams::new(ell, case.epsilon).unwrap();
            let out = decide_scatter(inst, &params).unwrap();
            decisions += 1;
            if case.opt >= ell {
                assert!(out.is_yes(), "case {idx}: OPT {} >= ell {ell} but No", case.opt);
            }
            if case.opt < ell * (1.0 - case.epsilon) {
                assert!(!out.is_yes(), "case {idx}: OPT {} < ell(1-eps) at ell {ell} but Yes", case.opt);
            }
            match &out.witness {
                Some(t) => {
                    let s = independent_scatter(inst, t.order());
                    assert!(s >= ell * (1.0 - case.epsilon) - TOL, "case {idx}: witness {s} at ell {ell}");
                    yes[usize::from(out.branch == Branch::ManyVisits)] += 1;
                }
                None => assert!(!out.is_yes()),
            }
        }
    }
    format!(
        "{decisions} decisions, zero violations, Yes via dirac/many_visits {}/{}",
        yes[0], yes[1]
    )
}

fn c3_normalization() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let mut pairs = 0;
    let mut with_swaps = 0;
    let mut max_swaps = 0;
    let mut attempts = 0;
    while pairs < 250 {
        attempts += 1;
        assert!(attempts < 200_000, "could not build enough pairs");
        let n = rng.random_range(7..=12);
        let dim = rng.random_range(1..=2);
        let heavy = n / 2 + 1;
        // heavy part spread over a unit box so its points can alternate,
        // the rest scattered far away
        let points: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let scale = if i < heavy { 1.0 } else { 50.0 };
                let shift = if i < heavy { 0.0 } else { 20.0 };
                (0..dim).map(|_| shift + scale * rng.random::<f64>()).collect()
            })
            .collect();
        let inst = Instance::euclidean(points).unwrap();
        let order = climb_scatter(&inst, &mut rng);
        let ell = independent_scatter(&inst, &order);
        if ell <= 0.0 {
            continue;
        }
        let Some(p) = (0..n).find(|&p| ball_count(&inst, p, ell) * 2 > n) else {
            continue;
        };
        let order = seed_far_edges(&inst, order, ell, p, &mut rng);
        assert!(independent_scatter(&inst, &order) >= ell);
        let tour = Tour::new(order).unwrap();
        let out = normalize_tour(&inst, &tour, ell, p).unwrap();
        let s = independent_scatter(&inst, out.tour.order());
        assert!(s >= ell - TOL * ell.max(1.0), "scatter dropped from {ell} to {s}");
        let far = |x: usize| inst.dist(p, x) >= 2.0 * ell - TOL * ell.max(1.0);
        let o = out.tour.order();
        for i in 0..n {
            assert!(!(far(o[i]) && far(o[(i + 1) % n])), "edge outside the ball survived");
        }
        assert!(out.swaps <= n);
        assert!(is_permutation(o, n));
        pairs += 1;
        with_swaps += usize::from(out.swaps > 0);
        max_swaps = max_swaps.max(out.swaps);
    }
    format!("{pairs} pairs, {with_swaps} needed swaps, max {max_swaps} swaps")
}

fn c4_many_visits() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let mut specs = 0;
    let mut feasible = 0;
    for g in 0..50 {
        let k = 1 + g % 5;
        let p: f64 = rng.random_range(0.25..0.95);
        let mut allowed = ThresholdGraph::empty(k);
        for u in 0..k {
            for v in (u + 1)..k {
                if rng.random::<f64>() < p {
                    allowed.add_edge(u, v);
                }
            }
        }
        let adj = |u: usize, v: usize| allowed.has_edge(u, v);
        for code in 0..3usize.pow(k as u32) {
            let visits: Vec<u64> = (0..k).map(|i| 1 + (code / 3usize.pow(i as u32) % 3) as u64).collect();
            let spec = VisitSpec::new(allowed.clone(), visits.clone()).unwrap();
            let got = many_visits_tour(&spec).unwrap();
            let truth = closed_walk_exists(k, &adj, &visits);
            assert_eq!(got.is_some(), truth, "graph {g}, visits {visits:?}");
            specs += 1;
            if let Some(w) = got {
                feasible += 1;
                let m = w.multiplicities();
                for v in 0..k {
                    assert_eq!(m.degree(v), 2 * visits[v]);
                }
                assert!(m.support_spans());
                let walk = w.to_vec();
                assert_eq!(walk.len() as u64, visits.iter().sum::<u64>());
                let mut counts = vec![0u64; k];
                let mut used = std::collections::BTreeMap::new();
                for i in 0..walk.len() {
                    let (a, b) = (walk[i], walk[(i + 1) % walk.len()]);
                    assert!(adj(a, b), "walk uses a disallowed edge");
                    counts[a] += 1;
                    *used.entry((a.min(b), a.max(b))).or_insert(0u64) += 1;
                }
                assert_eq!(counts, visits);
                let mults: std::collections::BTreeMap<_, _> =
                    m.edges().map(|(a, b, c)| ((a, b), c)).collect();
                assert_eq!(used, mults, "walk does not realize the multiplicities");
            }
        }
    }

    let cycle: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    let spec = VisitSpec::new(ThresholdGraph::from_edges(6, &cycle).unwrap(), vec![1_000_000; 6]).unwrap();
    let start = Instant::now();
    let w = many_visits_tour(&spec).unwrap().expect("cycle with equal visits is feasible");
    w.verify(&spec).unwrap();
    let m = w.multiplicities();
    assert!((0..6).all(|v| m.degree(v) == 2_000_000));
    assert_eq!(w.visit_counts(), vec![1_000_000; 6]);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "large case took {elapsed:?}");
    format!(
        "{specs} specs over 50 graphs ({feasible} feasible) match enumeration; \
         k=6 cycle with 10^6 visits each in {:.1} ms using {} runs",
        elapsed.as_secs_f64() * 1e3,
        w.runs().len()
    )
}

fn c5_nets() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(55);
    let mut max_ratio: f64 = 0.0;
    for t in 0..100 {
        let dim = 1 + t % 3;
        let n = rng.random_range(20..200);
        let radius: f64 = rng.random_range(0.5..5.0);
        let points: Vec<Vec<f64>> = (0..n).map(|_| point_in_ball(&mut rng, dim, radius)).collect();
        let inst = Instance::euclidean(points).unwrap();
        let delta = radius * rng.random_range(0.05..0.6);
        let ids: Vec<usize> = (0..n).collect();
        let net = greedy_delta_net(&inst, &ids, delta).unwrap();
        for x in 0..n {
            let c = net.center_of(x).unwrap();
            assert!(euclid(&inst, x, c) <= delta, "point {x} uncovered");
            // nearest center
            let nearest = net.center_ids.iter().map(|&c| euclid(&inst, x, c)).fold(f64::INFINITY, f64::min);
            assert_eq!(euclid(&inst, x, c), nearest);
        }
        for (a, &ca) in net.center_ids.iter().enumerate() {
            for &cb in &net.center_ids[a + 1..] {
                assert!(euclid(&inst, ca, cb) > delta, "centers {ca}, {cb} too close");
            }
        }
        let bound = (2.0 * radius / delta + 2.0).powi(dim as i32);
        assert!((net.len() as f64) <= bound);
        max_ratio = max_ratio.max(net.len() as f64 / bound);
    }
    format!("100 point sets, max |R| / volume bound {max_ratio:.3}")
}

fn c6_grid_rounding() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(66);
    let mut worst_slack = f64::INFINITY;
    for t in 0..10_000 {
        let dim = 2 + t % 2;
        let delta: f64 = rng.random_range(0.01..2.0);
        let x: Vec<f64> = (0..dim).map(|_| rng.random_range(-10.0..10.0)).collect();
        let y: Vec<f64> = (0..dim).map(|_| rng.random_range(-10.0..10.0)).collect();
        let fx = round_to_grid(&x, delta);
        let lhs = l2(&x, &y);
        let rhs = l2(&fx, &y) - delta * (dim as f64).sqrt() / 2.0;
        assert!(lhs >= rhs - 1e-12, "violation at {x:?} {y:?} delta {delta}");
        worst_slack = worst_slack.min(lhs - rhs);
    }
    format!("10000 pairs, min slack {worst_slack:.3e}")
}

fn c7_hardness() -> String {
    let mut graphs = vec![];
    let k33: Vec<_> = (0..3).flat_map(|a| (3..6).map(move |b| (a, b))).collect();
    graphs.push(CubicBipartiteGraph::new(6, &k33).unwrap());
    let cube: Vec<_> = (0..8usize)
        .flat_map(|v| (0..3).map(move |b| (v, v ^ (1 << b))))
        .filter(|&(u, v)| u < v)
        .collect();
    graphs.push(CubicBipartiteGraph::new(8, &cube).unwrap());
    // prism over a hexagon is bipartite and cubic on 12 vertices
    let mut prism: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    prism.extend((0..6).map(|i| (6 + i, 6 + (i + 1) % 6)));
    prism.extend((0..6).map(|i| (i, 6 + i)));
    graphs.push(CubicBipartiteGraph::new(12, &prism).unwrap());
    // Möbius ladder on 10 vertices (odd rungs make it bipartite)
    let mut ladder: Vec<_> = (0..10).map(|i| (i, (i + 1) % 10)).collect();
    ladder.extend((0..5).map(|i| (i, i + 5)));
    graphs.push(CubicBipartiteGraph::new(10, &ladder).unwrap());
    // relabeled copies exercise other colorings
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for base in graphs.clone() {
        let mut perm: Vec<usize> = (0..base.n()).collect();
        perm.shuffle(&mut rng);
        let edges: Vec<_> = base.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        graphs.push(CubicBipartiteGraph::new(base.n(), &edges).unwrap());
    }
    let nonham = find_non_hamiltonian_cubic_bipartite(12).unwrap().expect("search finds one");
    graphs.push(nonham);

    let (mut ham, mut non) = (0, 0);
    for g in &graphs {
        let n = g.n();
        let (labeling, inst) = embed(g).unwrap();
        let m = labeling.m;
        let near = 2.0 * (1u64 << m) as f64;
        let far = 3.0 * (1u64 << (m - 1)) as f64;
        let mut seen = std::collections::BTreeSet::new();
        for u in 0..n {
            for v in (u + 1)..n {
                let d = labeling.labels[u]
                    .iter()
                    .zip(&labeling.labels[v])
                    .filter(|(a, b)| a != b)
                    .count() as f64;
                assert_eq!(inst.dist(u, v), d);
                assert_eq!(d, if g.has_edge(u, v) { near } else { far }, "pair ({u}, {v})");
                seen.insert(d as u64);
            }
        }
        assert_eq!(seen.len(), 2);
        let hamiltonian = bottleneck_opt(n, |a, b| if g.has_edge(a, b) { 1.0 } else { 0.0 }) == 1.0;
        let opt = bottleneck_opt(n, |a, b| inst.dist(a, b));
        assert_eq!(opt == near, hamiltonian);
        assert_eq!(opt, if hamiltonian { near } else { far });
        assert_eq!(far / near, 0.75);
        for p in [1.0, 2.0] {
            let lp = inst.with_norm(LpNorm::P(p)).unwrap();
            for u in 0..n {
                for v in (u + 1)..n {
                    let want = inst.dist(u, v).powf(1.0 / p);
                    assert!((lp.dist(u, v) - want).abs() <= 1e-12 * want);
                }
            }
            let ratio = far.powf(1.0 / p) / near.powf(1.0 / p);
            assert!((ratio - 0.75f64.powf(1.0 / p)).abs() < 1e-15);
        }
        if hamiltonian {
            ham += 1;
        } else {
            non += 1;
        }
    }
    format!("{} graphs ({ham} Hamiltonian, {non} not), dichotomy and 3/4 gap exact", graphs.len())
}

fn c8_scale() -> String {
    let params = GenParams {
        spread: 1.0,
        far: 100.0,
        clumps: 3,
        far_clumps: 3,
        ..GenParams::default()
    };
    let inst = generate(GeneratorKind::Clustered, 10_000, 2, 8, &params).unwrap();
    let epsilon = 0.1;
    let start = Instant::now();
    let best = maximize_scatter(&inst, epsilon).unwrap();
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    assert!(is_permutation(best.tour.order(), inst.n()));
    let s = independent_scatter(&inst, best.tour.order());
    assert!(s >= (1.0 - epsilon) * best.ell_hat - TOL, "witness {s} vs ell_hat {}", best.ell_hat);
    let net = best.max_net_size.expect("low-degree branch fired");
    assert!(net <= 10, "net size {net}");
    format!(
        "{:.2}s, ell_hat {:.6}, witness scatter {s:.6}, final branch {}, {} probes, max net size {net}",
        elapsed.as_secs_f64(),
        best.ell_hat,
        best.branch,
        best.probes
    )
}

fn c9_graph_kit() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut slowest = Duration::ZERO;
    for t in 1..=100 {
        let n = 20 * t;
        let g = dense_graph(&mut rng, n);
        assert!(g.min_degree() * 2 >= n);
        let start = Instant::now();
        let tour = dirac_hamiltonian(&g).unwrap();
        let elapsed = start.elapsed();
        assert!(elapsed < Duration::from_secs(5), "n={n} took {elapsed:?}");
        slowest = slowest.max(elapsed);
        let o = tour.order();
        assert!(is_permutation(o, n));
        assert!((0..n).all(|i| g.has_edge(o[i], o[(i + 1) % n])), "n={n}: non-edge in tour");
    }

    let mut closures = 0;
    let mut lifts = 0;
    while lifts < 100 {
        let n = rng.random_range(8..40);
        let p: f64 = rng.random_range(0.3..0.7);
        let mut g = ThresholdGraph::empty(n);
        for u in 0..n {
            for v in (u + 1)..n {
                if rng.random::<f64>() < p {
                    g.add_edge(u, v);
                }
            }
        }
        let (cl, log) = bondy_chvatal_closure(&g);
        let (again, log2) = bondy_chvatal_closure(&cl);
        assert_eq!(again, cl, "closure not idempotent");
        assert!(log2.is_empty());
        closures += 1;
        if !cl.is_complete() {
            continue;
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let lifted = bc_lift(&g, &log, &Tour::new(order).unwrap()).unwrap();
        let o = lifted.order();
        assert!(is_permutation(o, n));
        assert!((0..n).all(|i| g.has_edge(o[i], o[(i + 1) % n])), "lift left a non-base edge");
        lifts += 1;
    }
    format!(
        "100 Dirac tours up to n=2000 (slowest {:.1} ms), {closures} idempotent closures, {lifts} lifts",
        slowest.as_secs_f64() * 1e3
    )
}

// ---------------------------------------------------------------- oracles

/// Maximum over tours of the minimum edge weight, by DP over (visited set,
/// endpoint) with the tour anchored at 0.
fn bottleneck_opt(n: usize, w: impl Fn(usize, usize) -> f64) -> f64 {
    let rest = n - 1;
    let full = (1usize << rest) - 1;
    let mut best = vec![f64::NEG_INFINITY; (full + 1) * n];
    for v in 1..n {
        best[(1 << (v - 1)) * n + v] = w(0, v);
    }
    for mask in 1..=full {
        for v in 1..n {
            let cur = best[mask * n + v];
            if mask & (1 << (v - 1)) == 0 || cur == f64::NEG_INFINITY {
                continue;
            }
            for u in 1..n {
                if mask & (1 << (u - 1)) == 0 {
                    let next = mask | (1 << (u - 1));
                    let val = cur.min(w(v, u));
                    if val > best[next * n + u] {
                        best[next * n + u] = val;
                    }
                }
            }
        }
    }
    (1..n)
        .map(|v| best[full * n + v].min(w(v, 0)))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Closed walk with the given visit counts, by memoized search from 0.
fn closed_walk_exists(k: usize, adj: &dyn Fn(usize, usize) -> bool, visits: &[u64]) -> bool {
    use std::collections::HashMap;
    fn go(
        k: usize,
        adj: &dyn Fn(usize, usize) -> bool,
        cur: usize,
        rem: &mut Vec<u64>,
        memo: &mut HashMap<(usize, Vec<u64>), bool>,
    ) -> bool {
        if rem.iter().all(|&r| r == 0) {
            return adj(cur, 0);
        }
        if let Some(&r) = memo.get(&(cur, rem.clone())) {
            return r;
        }
        let mut ok = false;
        for v in 0..k {
            if rem[v] > 0 && adj(cur, v) {
                rem[v] -= 1;
                ok = go(k, adj, v, rem, memo);
                rem[v] += 1;
                if ok {
                    break;
                }
            }
        }
        memo.insert((cur, rem.clone()), ok);
        ok
    }
    let mut rem = visits.to_vec();
    rem[0] -= 1;
    go(k, adj, 0, &mut rem, &mut HashMap::new())
}

fn independent_scatter(inst: &Instance, order: &[usize]) -> f64 {
    let n = order.len();
    (0..n).map(|i| inst.dist(order[i], order[(i + 1) % n])).fold(f64::INFINITY, f64::min)
}

fn is_permutation(order: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    order.len() == n && order.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

fn is_pairwise_distance(inst: &Instance, v: f64) -> bool {
    let n = inst.n();
    (0..n).any(|i| ((i + 1)..n).any(|j| (inst.dist(i, j) - v).abs() <= 1e-12 * v.max(1.0)))
}

fn ball_count(inst: &Instance, p: usize, ell: f64) -> usize {
    (0..inst.n()).filter(|&x| inst.dist(p, x) < ell - TOL * ell.max(1.0)).count()
}

/// Random restarts of a swap search that never lowers the scatter.
fn climb_scatter(inst: &Instance, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = inst.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut cur = independent_scatter(inst, &order);
    for _ in 0..400 {
        let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
        order.swap(i, j);
        let s = independent_scatter(inst, &order);
        if s >= cur {
            cur = s;
        } else {
            order.swap(i, j);
        }
    }
    order
}

/// Swaps that keep the scatter at least `ell` while adding edges with both
/// endpoints `2ell` or more away from `p`.
fn seed_far_edges(inst: &Instance, mut order: Vec<usize>, ell: f64, p: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = order.len();
    let far = |x: usize| inst.dist(p, x) >= 2.0 * ell;
    let count = |o: &[usize]| (0..n).filter(|&i| far(o[i]) && far(o[(i + 1) % n])).count();
    let mut cur = count(&order);
    for _ in 0..300 {
        let (i, j) = (rng.random_range(0..n), rng.random_range(0..n));
        order.swap(i, j);
        let c = count(&order);
        if c >= cur && independent_scatter(inst, &order) >= ell {
            cur = c;
        } else {
            order.swap(i, j);
        }
    }
    order
}

fn dense_graph(rng: &mut ChaCha8Rng, n: usize) -> ThresholdGraph {
    let half = n.div_ceil(2);
    let p: f64 = rng.random_range(0.45..0.6);
    let mut g = ThresholdGraph::empty(n);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random::<f64>() < p {
                g.add_edge(u, v);
            }
        }
    }
    for u in 0..n {
        while g.degree(u) < half {
            let v = rng.random_range(0..n);
            if v != u {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn point_in_ball(rng: &mut ChaCha8Rng, dim: usize, radius: f64) -> Vec<f64> {
    loop {
        let p: Vec<f64> = (0..dim).map(|_| rng.random_range(-radius..radius)).collect();
        if l2(&p, &vec![0.0; dim]) <= radius {
            return p;
        }
    }
}

fn l2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

fn euclid(inst: &Instance, a: usize, b: usize) -> f64 {
    l2(inst.coords(a).unwrap(), inst.coords(b).unwrap())
}
