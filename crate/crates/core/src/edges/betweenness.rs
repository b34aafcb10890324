use std::collections::VecDeque;

use crate::temporal::{TemporalEdge, TemporalNetwork};

/// Directed edge betweenness with unit edge lengths: for every ordered pair `(s, u)`,
/// each shortest `s -> u` path credits `1 / σ(s, u)` to every edge on it.
///
/// Parallel edges are kept apart and share the credit of their common paths.
pub fn edge_betweenness(node_count: usize, edges: &[(usize, usize)]) -> Vec<f64> {
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); node_count];
    for (k, &(u, _)) in edges.iter().enumerate() {
        out_edges[u].push(k);
    }
    let mut score = vec![0.0; edges.len()];

    let mut sigma = vec![0.0f64; node_count];
    let mut dist = vec![usize::MAX; node_count];
    let mut delta = vec![0.0f64; node_count];
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); node_count];
    let mut order: Vec<usize> = Vec::with_capacity(node_count);
    let mut queue = VecDeque::new();

    for s in 0..node_count {
        if out_edges[s].is_empty() {
            continue;
        }
        for &v in &order {
            sigma[v] = 0.0;
            dist[v] = usize::MAX;
            delta[v] = 0.0;
            preds[v].clear();
        }
        order.clear();
        sigma[s] = 1.0;
        dist[s] = 0;
        queue.push_back(s);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &k in &out_edges[v] {
                let w = edges[k].1;
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(k);
                }
            }
        }
        for &w in order.iter().rev() {
            for &k in &preds[w] {
                let v = edges[k].0;
                let credit = sigma[v] / sigma[w] * (1.0 + delta[w]);
                score[k] += credit;
                delta[v] += credit;
            }
        }
    }
    score
}

/// Betweenness of every temporal edge, computed on the unsplit time-layered graph
/// (node `(i, t)` per layer, edge `(i, t) -> (j, t + 1)` per temporal edge).
///
/// Self-edges get no score. With `retention_paths`, the state-retention links
/// `(i, t) -> (i, t + 1)` of a network with self-loops still carry shortest paths.
pub fn temporal_edge_betweenness_with(net: &TemporalNetwork, retention_paths: bool) -> Vec<(TemporalEdge, f64)> {
    let n = net.node_count();
    let layers = net.steps() + 1;
    let temporal: Vec<TemporalEdge> = net.edges().filter(|e| !e.is_self_edge()).collect();
    let mut layered: Vec<(usize, usize)> = temporal
        .iter()
        .map(|e| {
            let layer = e.time - net.t0();
            (layer * n + e.source, (layer + 1) * n + e.target)
        })
        .collect();
    if retention_paths && net.self_loops() {
        for layer in 0..layers - 1 {
            layered.extend((0..n).map(|i| (layer * n + i, (layer + 1) * n + i)));
        }
    }
    let scores = edge_betweenness(n * layers, &layered);
    temporal.into_iter().zip(scores).collect()
}

/// [`temporal_edge_betweenness_with`] without retention paths.
pub fn temporal_edge_betweenness(net: &TemporalNetwork) -> Vec<(TemporalEdge, f64)> {
    temporal_edge_betweenness_with(net, false)
}
