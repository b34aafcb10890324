use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::betweenness::temporal_edge_betweenness_with;
use crate::controllability::{controllable_dimension, DriverSet};
use crate::error::{Error, Result};
use crate::temporal::{TemporalEdge, TemporalNetwork};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AttackStrategy {
    Random,
    Ascending,
    Descending,
}

impl std::fmt::Display for AttackStrategy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AttackStrategy::Random => "random",
            AttackStrategy::Ascending => "asc",
            AttackStrategy::Descending => "desc",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AttackOptions {
    /// Spacing of sampled removal fractions, in `(0, 1]`.
    pub step_fraction: f64,
    /// Independent permutations averaged for the random strategy.
    pub trials: usize,
    pub seed: u64,
    /// Recompute betweenness on the pruned network before every removal step.
    pub adaptive: bool,
    /// Let shortest paths run along state-retention links when scoring edges.
    #[serde(default)]
    pub retention_paths: bool,
}

impl Default for AttackOptions {
    fn default() -> Self {
        Self {
            step_fraction: 0.05,
            trials: 100,
            seed: 0,
            adaptive: false,
            retention_paths: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AttackPoint {
    pub fraction: f64,
    pub removed: usize,
    pub mean: f64,
    pub std: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttackTrace {
    pub strategy: AttackStrategy,
    pub driver_set_id: usize,
    pub trials: usize,
    pub points: Vec<AttackPoint>,
}

impl AttackTrace {
    /// Trapezoidal area under the mean-dimension curve over the removed fraction.
    pub fn area(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| (w[1].fraction - w[0].fraction) * (w[0].mean + w[1].mean) / 2.0)
            .sum()
    }
}

/// Sampled fractions `0, step, 2·step, …, 1`.
pub fn sample_fractions(step_fraction: f64) -> Result<Vec<f64>> {
    if !(step_fraction > 0.0 && step_fraction <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "step fraction must lie in (0, 1], got {step_fraction}"
        )));
    }
    let steps = (1.0 / step_fraction - 1e-9).ceil() as usize;
    Ok((0..=steps)
        .map(|k| (k as f64 * step_fraction).min(1.0))
        .collect())
}

/// Removable edges (self-edges excluded) ordered for a betweenness-targeted attack;
/// ties keep `(t, i, j)` order.
pub fn betweenness_order(net: &TemporalNetwork, strategy: AttackStrategy, retention_paths: bool) -> Vec<TemporalEdge> {
    let mut scored: Vec<(TemporalEdge, i64)> = temporal_edge_betweenness_with(net, retention_paths)
        .into_iter()
        .map(|(e, s)| (e, quantize(s)))
        .collect();
    match strategy {
        AttackStrategy::Descending => scored.sort_by_key(|&(e, s)| (std::cmp::Reverse(s), e)),
        _ => scored.sort_by_key(|&(e, s)| (s, e)),
    }
    scored.into_iter().map(|(e, _)| e).collect()
}

// equal scores reached through different summation orders must tie
fn quantize(score: f64) -> i64 {
    (score * 1e6).round() as i64
}

/// Removes edges cumulatively in strategy order and records `f(D)` for every driver
/// set at every sampled fraction.
pub fn attack_simulation(
    net: &TemporalNetwork,
    driver_sets: &[DriverSet],
    strategy: AttackStrategy,
    options: AttackOptions,
) -> Result<Vec<AttackTrace>> {
    let fractions = sample_fractions(options.step_fraction)?;
    for d in driver_sets {
        d.validate(net.node_count())?;
    }
    let removable: Vec<TemporalEdge> = net.edges().filter(|e| !e.is_self_edge()).collect();
    let total = removable.len();
    let counts: Vec<usize> = fractions
        .iter()
        .map(|f| ((f * total as f64).round() as usize).min(total))
        .collect();

    // one dimension curve per (trial, driver set)
    let curves: Vec<Vec<Vec<usize>>> = match strategy {
        AttackStrategy::Random => {
            if options.trials == 0 {
                return Err(Error::InvalidArgument("random attack needs at least one trial".into()));
            }
            let mut master = ChaCha8Rng::seed_from_u64(options.seed);
            let orders: Vec<Vec<TemporalEdge>> = (0..options.trials)
                .map(|_| {
                    let mut order = removable.clone();
                    order.shuffle(&mut master);
                    order
                })
                .collect();
            orders
                .par_iter()
                .map(|order| static_curves(net, order, &counts, driver_sets))
                .collect::<Result<_>>()?
        }
        targeted if options.adaptive => vec![adaptive_curves(net, targeted, options.retention_paths, &counts, driver_sets)?],
        targeted => {
            let order = betweenness_order(net, targeted, options.retention_paths);
            vec![static_curves(net, &order, &counts, driver_sets)?]
        }
    };

    let trials = curves.len();
    Ok((0..driver_sets.len())
        .map(|d| {
            let points = fractions
                .iter()
                .enumerate()
                .map(|(k, &fraction)| {
                    let values: Vec<f64> = curves.iter().map(|c| c[d][k] as f64).collect();
                    let mean = values.iter().sum::<f64>() / trials as f64;
                    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / trials as f64;
                    AttackPoint {
                        fraction,
                        removed: counts[k],
                        mean,
                        std: var.sqrt(),
                    }
                })
                .collect();
            AttackTrace {
                strategy,
                driver_set_id: d,
                trials,
                points,
            }
        })
        .collect())
}

fn static_curves(
    net: &TemporalNetwork,
    order: &[TemporalEdge],
    counts: &[usize],
    driver_sets: &[DriverSet],
) -> Result<Vec<Vec<usize>>> {
    let mut curves = vec![Vec::with_capacity(counts.len()); driver_sets.len()];
    for &removed in counts {
        let pruned = net.without_edges(&order[..removed]);
        for (curve, d) in curves.iter_mut().zip(driver_sets) {
            curve.push(controllable_dimension(&pruned, d)?);
        }
    }
    Ok(curves)
}

fn adaptive_curves(
    net: &TemporalNetwork,
    strategy: AttackStrategy,
    retention_paths: bool,
    counts: &[usize],
    driver_sets: &[DriverSet],
) -> Result<Vec<Vec<usize>>> {
    let mut curves = vec![Vec::with_capacity(counts.len()); driver_sets.len()];
    let mut pruned = net.clone();
    let mut removed = 0;
    for &target in counts {
        if target > removed {
            let order = betweenness_order(&pruned, strategy, retention_paths);
            pruned = pruned.without_edges(&order[..target - removed]);
            removed = target;
        }
        for (curve, d) in curves.iter_mut().zip(driver_sets) {
            curve.push(controllable_dimension(&pruned, d)?);
        }
    }
    Ok(curves)
}
