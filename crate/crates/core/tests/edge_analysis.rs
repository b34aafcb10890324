use std::collections::HashMap;

use tempoctrl_core::detect::BruteForceOptions;
use tempoctrl_core::edges::{
    attack_simulation, betweenness_order, classify_edges, AttackOptions, AttackStrategy, EdgeRole,
    temporal_edge_betweenness_with, Provenance,
};
use tempoctrl_core::{brute_force, controllable_dimension, GeneratorSpec};

#[test]
fn roles_agree_with_direct_recomputation() {
    // sparse enough that single edges matter
    let (mut critical, mut ordinary) = (0, 0);
    for seed in 0..12 {
        let net = GeneratorSpec::er(8, 3, 0.1, seed).generate().unwrap();
        let n = net.node_count();
        let c = classify_edges(&net, 16).unwrap();
        assert_eq!(c.provenance, Provenance::Exact);
        let n_d = brute_force(&net, BruteForceOptions::default()).unwrap().min_size.unwrap();
        assert_eq!(c.n_d, n_d);
        for &(edge, role) in &c.roles {
            let pruned = net.without_edges(&[edge]);
            let keeps = controllable_dimension(&pruned, &c.reference).unwrap() == n;
            assert_eq!(role == EdgeRole::Redundant, keeps, "{edge:?}");
            let pruned_min = brute_force(&pruned, BruteForceOptions::default()).unwrap().min_size.unwrap();
            assert!(pruned_min >= n_d);
            assert_eq!(role == EdgeRole::Critical, pruned_min > n_d, "{edge:?}");
            critical += usize::from(role == EdgeRole::Critical);
            ordinary += usize::from(role == EdgeRole::Ordinary);
        }
    }
    assert!(critical > 0 && ordinary > 0, "ensemble should exercise every role");
}

#[test]
fn targeted_orders_follow_scores() {
    let net = GeneratorSpec::er(10, 6, 0.2, 2).generate().unwrap();
    for retention_paths in [false, true] {
        let scores: HashMap<_, _> = temporal_edge_betweenness_with(&net, retention_paths).into_iter().collect();
        let desc = betweenness_order(&net, AttackStrategy::Descending, retention_paths);
        let asc = betweenness_order(&net, AttackStrategy::Ascending, retention_paths);
        assert_eq!(desc.len(), scores.len());
        for w in desc.windows(2) {
            assert!(scores[&w[0]] >= scores[&w[1]] - 1e-9);
        }
        for w in asc.windows(2) {
            assert!(scores[&w[0]] <= scores[&w[1]] + 1e-9);
        }
    }
}

#[test]
fn attack_curves_monotone_and_deterministic() {
    let net = GeneratorSpec::er(10, 6, 0.2, 6).generate().unwrap();
    let drivers = vec![tempoctrl_core::otaha(&net).unwrap().driver_set()];
    let opts = AttackOptions {
        step_fraction: 0.1,
        trials: 8,
        seed: 21,
        ..AttackOptions::default()
    };
    for strategy in [AttackStrategy::Random, AttackStrategy::Ascending, AttackStrategy::Descending] {
        let a = attack_simulation(&net, &drivers, strategy, opts).unwrap();
        let b = attack_simulation(&net, &drivers, strategy, opts).unwrap();
        assert_eq!(a, b);
        let pts = &a[0].points;
        assert_eq!(pts[0].mean, 10.0);
        assert_eq!(pts.len(), 11);
        for w in pts.windows(2) {
            assert!(w[1].mean <= w[0].mean + 1e-12);
        }
    }
}
