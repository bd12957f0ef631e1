use proptest::prelude::*;

use scatter_tsp::eptas::{find_low_degree_point, LowDegreeContext};
use scatter_tsp::graph::{dirac_hamiltonian, eulerian_tour, threshold_graph, Multigraph, ThresholdGraph};
use scatter_tsp::hardness::reed_muller;
use scatter_tsp::instance::{at_least, candidate_distances};
use scatter_tsp::io::{instance_from_json, instance_to_json};
use scatter_tsp::many_visits::{many_visits_tour, VisitSpec};
use scatter_tsp::net::greedy_delta_net;
use scatter_tsp::{decide_scatter, scatter, DecisionParams, Instance, LpNorm, Tour};

fn points(n: std::ops::RangeInclusive<usize>, dim: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-10.0..10.0f64, dim), n)
}

fn norm() -> impl Strategy<Value = LpNorm> {
    prop_oneof![Just(LpNorm::P(1.0)), Just(LpNorm::P(2.0)), Just(LpNorm::Infinity), (1.0..6.0f64).prop_map(LpNorm::P)]
}

fn instance() -> impl Strategy<Value = Instance> {
    (1usize..=3)
        .prop_flat_map(|d| (points(3..=12, d), norm()))
        .prop_map(|(p, norm)| Instance::lp(norm, p).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn scatter_ignores_rotation_and_direction(inst in instance(), k in 0usize..20) {
        let t = Tour::identity(inst.n());
        let s = scatter(&inst, &t).unwrap();
        prop_assert_eq!(scatter(&inst, &t.rotated(k)).unwrap(), s);
        prop_assert_eq!(scatter(&inst, &t.reversed()).unwrap(), s);
    }

    #[test]
    fn threshold_graph_matches_distances(inst in instance(), q in 0.0..1.0f64) {
        let cands = candidate_distances(&inst);
        let ell = cands.values()[(q * (cands.len() - 1) as f64) as usize];
        let g = threshold_graph(&inst, ell);
        for u in 0..inst.n() {
            prop_assert!(!g.has_edge(u, u));
            for v in 0..inst.n() {
                if u != v {
                    prop_assert_eq!(g.has_edge(u, v), at_least(inst.dist(u, v), ell));
                    prop_assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
                }
            }
        }
    }

    #[test]
    fn candidates_cover_all_pairs(inst in instance()) {
        let c = candidate_distances(&inst);
        prop_assert!(c.values().windows(2).all(|w| w[0] < w[1]));
        for i in 0..inst.n() {
            for j in (i + 1)..inst.n() {
                prop_assert!(c.contains(inst.dist(i, j)));
            }
        }
    }

    #[test]
    fn io_round_trip(inst in instance()) {
        let back = instance_from_json(&instance_to_json(&inst)).unwrap();
        prop_assert_eq!(back.n(), inst.n());
        for i in 0..inst.n() {
            for j in 0..inst.n() {
                prop_assert_eq!(back.dist(i, j), inst.dist(i, j));
            }
        }
    }

    #[test]
    fn nets_cover_and_pack(inst in instance(), delta in 0.1..8.0f64) {
        let ids: Vec<usize> = (0..inst.n()).collect();
        let net = greedy_delta_net(&inst, &ids, delta).unwrap();
        prop_assert!(net.covering_radius(&inst) <= delta);
        prop_assert!(net.separation(&inst) > delta);
        prop_assert_eq!(net.preimages.iter().map(Vec::len).sum::<usize>(), inst.n());
    }

    #[test]
    fn yes_witnesses_validate_and_low_degree_points_cluster(inst in instance(), q in 0.0..1.0f64, eps in 0.05..0.5f64) {
        let cands = candidate_distances(&inst);
        let ell = cands.values()[(q * (cands.len() - 1) as f64) as usize];
        prop_assume!(ell > 0.0);
        let out = decide_scatter(&inst, &DecisionParams::new(ell, eps).unwrap()).unwrap();
        if let Some(t) = &out.witness {
            prop_assert!(scatter(&inst, t).unwrap() >= ell * (1.0 - eps) - 1e-9);
        }
        if let Some(p) = find_low_degree_point(&inst, ell) {
            let ctx = LowDegreeContext::new(&inst, p, ell);
            prop_assert!(ctx.b2_members.contains(&p));
            let n = inst.n();
            for x in 0..n {
                let ball = (0..n).filter(|&y| !at_least(inst.dist(x, y), ell)).count();
                if 2 * ball > n {
                    prop_assert!(inst.dist(p, x) < 2.0 * ell, "low-degree {x} far from {p}");
                }
            }
        }
    }

    #[test]
    fn many_visits_scales(k in 2usize..=6, edges in prop::collection::vec(any::<bool>(), 15), visits in prop::collection::vec(1u64..4, 6), factor in 2u64..50) {
        let mut g = ThresholdGraph::empty(k);
        let mut bit = edges.iter();
        for u in 0..k {
            for v in (u + 1)..k {
                if *bit.next().unwrap() {
                    g.add_edge(u, v);
                }
            }
        }
        let visits = visits[..k].to_vec();
        let spec = VisitSpec::new(g.clone(), visits.clone()).unwrap();
        let scaled = VisitSpec::new(g, visits.iter().map(|v| v * factor).collect()).unwrap();
        let base = many_visits_tour(&spec).unwrap();
        let big = many_visits_tour(&scaled).unwrap();
        if base.is_some() {
            prop_assert!(big.is_some());
        }
        if let Some(w) = big {
            w.verify(&scaled).unwrap();
        }
    }

    #[test]
    fn euler_tours_use_every_edge(k in 2usize..8, raw in prop::collection::vec((0usize..8, 0usize..8, 1u64..4), 1..20)) {
        // doubling each edge makes every degree even
        let mut g = Multigraph::new(k);
        for (u, v, c) in raw {
            let (u, v) = (u % k, v % k);
            if u != v {
                g.add(u, v, 2 * c).unwrap();
            }
        }
        prop_assume!(g.total_edges() > 0 && g.support_connected());
        let walk = eulerian_tour(&g).unwrap();
        prop_assert_eq!(walk.first(), walk.last());
        let mut used = Multigraph::new(k);
        for w in walk.windows(2) {
            used.add(w[0], w[1], 1).unwrap();
        }
        prop_assert_eq!(used, g);
    }

    #[test]
    fn dirac_on_dense_graphs(n in 3usize..60, seed in any::<u64>()) {
        let mut g = ThresholdGraph::empty(n);
        let mut x = seed | 1;
        for u in 0..n {
            for v in (u + 1)..n {
                x ^= x << 13;
                x ^= x >> 7;
                x ^= x << 17;
                if x % 3 != 0 {
                    g.add_edge(u, v);
                }
            }
        }
        prop_assume!(2 * g.min_degree() >= n);
        let t = dirac_hamiltonian(&g).unwrap();
        let o = t.order();
        prop_assert!((0..n).all(|i| g.has_edge(o[i], o[(i + 1) % n])));
    }

    #[test]
    fn reed_muller_distances(m in 1u32..=6, a in 0usize..64, b in 0usize..64) {
        let code = reed_muller(m).unwrap();
        let (a, b) = (a % code.len(), b % code.len());
        let d = code.word(a).iter().zip(code.word(b)).filter(|(x, y)| **x != *y).count();
        prop_assert_eq!(d, if a == b { 0 } else { code.len() / 2 });
    }
}
