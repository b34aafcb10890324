use std::sync::Arc;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tempoctrl_core::controllability::DriverSet;
use tempoctrl_core::flow::{FlowTopology, ResidualState, SearchOrder};
use tempoctrl_core::{controllable_dimension, GeneratorSpec};

/// Random DAG on `n` nodes (edges only from lower to higher id), source 0, sink n-1.
fn random_dag(n: usize, p: f64, seed: u64) -> Vec<(usize, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((i, j));
            }
        }
    }
    edges
}

/// Minimum s-t cut by enumerating every node subset containing s and not t.
fn brute_min_cut(n: usize, s: usize, t: usize, edges: &[(usize, usize)]) -> usize {
    let free: Vec<usize> = (0..n).filter(|&v| v != s && v != t).collect();
    let mut best = usize::MAX;
    for mask in 0u32..(1 << free.len()) {
        let mut side = vec![false; n];
        side[s] = true;
        for (bit, &v) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                side[v] = true;
            }
        }
        let cut = edges.iter().filter(|&&(u, v)| side[u] && !side[v]).count();
        best = best.min(cut);
    }
    best
}

#[test]
fn max_flow_equals_exhaustive_min_cut() {
    for seed in 0..60 {
        let n = 12;
        let p = [0.15, 0.25, 0.4][seed as usize % 3];
        let edges = random_dag(n, p, seed);
        let topo = Arc::new(FlowTopology::from_edges(n, 0, n - 1, &edges).unwrap());
        let state = ResidualState::new(topo);
        assert_eq!(state.flow_value(), brute_min_cut(n, 0, n - 1, &edges), "seed {seed}");
        assert!(!state.has_augmenting_path());
    }
}

#[test]
fn search_order_does_not_change_flow() {
    for seed in 0..60 {
        let edges = random_dag(14, 0.3, 1000 + seed);
        let topo = Arc::new(FlowTopology::from_edges(14, 0, 13, &edges).unwrap());
        let bfs = ResidualState::with_order(Arc::clone(&topo), SearchOrder::BreadthFirst);
        let dfs = ResidualState::with_order(topo, SearchOrder::DepthFirst);
        assert_eq!(bfs.flow_value(), dfs.flow_value());
    }
    for seed in 0..40 {
        let net = GeneratorSpec::er(8, 4, 0.3, seed).generate().unwrap();
        let topo = Arc::new(FlowTopology::from_network(&net));
        let mut bfs = ResidualState::with_order(Arc::clone(&topo), SearchOrder::BreadthFirst);
        let mut dfs = ResidualState::with_order(topo, SearchOrder::DepthFirst);
        for v in [5, 1, 6] {
            bfs.add_driver(v).unwrap();
            dfs.add_driver(v).unwrap();
        }
        assert_eq!(bfs.flow_value(), dfs.flow_value());
    }
}

/// Source feeds 1, 2, 4; node 3 only reaches 5, whose single exit is taken by the
/// first path from 1. Adding `s -> 3` can only pay off by pushing flow back over 1 -> 5
/// and rerouting 1 through 8.
#[test]
fn residual_increment_reuses_backflow() {
    let (s, t) = (0, 9);
    let edges = [
        (s, 1),
        (s, 2),
        (s, 4),
        (1, 5),
        (1, 8),
        (2, 6),
        (4, 7),
        (5, t),
        (6, t),
        (7, t),
        (8, t),
        (3, 5),
    ];
    let topo = Arc::new(FlowTopology::from_edges(10, s, t, &edges).unwrap());

    let base = ResidualState::new(Arc::clone(&topo));
    let f1 = base.flow_value();
    assert_eq!(f1, 3);
    assert_eq!(base.edge_residuals(3), (false, true), "first path uses 1 -> 5");

    let with_edge: Vec<(usize, usize)> = edges.iter().copied().chain([(s, 3)]).collect();
    let scratch = ResidualState::new(Arc::new(FlowTopology::from_edges(10, s, t, &with_edge).unwrap()));
    let f2 = scratch.flow_value();
    assert_eq!(f2, 4);

    let mut online = base.clone();
    let f3 = online.add_source_edges(&[3]).unwrap();
    assert_eq!(f3, 1);
    assert_eq!(f3, f2 - f1);
    // 1 -> 5 was undone, 1 -> 8 and 3 -> 5 now carry flow
    assert_eq!(online.edge_residuals(3), (true, false));
    assert_eq!(online.edge_residuals(4), (false, true));
    assert_eq!(online.edge_residuals(11), (false, true));
}

#[test]
fn online_increment_matches_scratch_on_temporal_networks() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for seed in 0..100 {
        let net = GeneratorSpec::er(8, 4, 0.3, seed).generate().unwrap();
        let mut nodes: Vec<usize> = (0..8).collect();
        nodes.shuffle(&mut rng);
        let k = rng.gen_range(0..7);
        let d = DriverSet::new(nodes[..k].iter().copied());
        let v = nodes[k];
        let mut state = ResidualState::for_network(&net);
        for &u in d.nodes() {
            state.add_driver(u).unwrap();
        }
        let inc = state.add_driver(v).unwrap();
        let expected = controllable_dimension(&net, &d.with(v)).unwrap()
            - controllable_dimension(&net, &d).unwrap();
        assert_eq!(inc, expected, "seed {seed}");
    }
}

#[test]
fn flow_bounded_by_source_and_sink_degree() {
    for seed in 0..30 {
        let net = GeneratorSpec::er(7, 3, 0.4, seed).generate().unwrap();
        let mut state = ResidualState::for_network(&net);
        for v in 0..(seed as usize % 7) {
            state.add_driver(v).unwrap();
            assert!(state.flow_value() <= state.source_out_degree().min(state.sink_in_degree()));
        }
        assert_eq!(state.sink_in_degree(), 7);
    }
}

#[test]
fn clone_leaves_original_serialization_untouched() {
    let net = GeneratorSpec::er(6, 3, 0.3, 5).generate().unwrap();
    let mut state = ResidualState::for_network(&net);
    state.add_driver(2).unwrap();
    let before = serde_json::to_string(&state.to_debug_json()).unwrap();
    let mut copy = state.clone();
    copy.add_driver(4).unwrap();
    copy.add_driver(0).unwrap();
    assert_eq!(serde_json::to_string(&state.to_debug_json()).unwrap(), before);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn any_addition_order_reaches_scratch_value(seed in 0u64..10_000, perm_seed in 0u64..1000) {
        let net = GeneratorSpec::er(7, 4, 0.25, seed).generate().unwrap();
        let mut order: Vec<usize> = (0..7).collect();
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(perm_seed));
        let mut state = ResidualState::for_network(&net);
        for (k, &v) in order.iter().enumerate() {
            state.add_driver(v).unwrap();
            let prefix = DriverSet::new(order[..=k].iter().copied());
            prop_assert_eq!(state.flow_value(), controllable_dimension(&net, &prefix).unwrap());
            prop_assert!(!state.has_augmenting_path());
        }
    }

    #[test]
    fn residual_pairs_stay_complementary(seed in 0u64..10_000) {
        let edges = random_dag(10, 0.3, seed);
        let topo = Arc::new(FlowTopology::from_edges(10, 0, 9, &edges).unwrap());
        let state = ResidualState::new(topo);
        for k in 0..edges.len() {
            let (fwd, back) = state.edge_residuals(k);
            prop_assert!(fwd ^ back);
        }
    }
}
