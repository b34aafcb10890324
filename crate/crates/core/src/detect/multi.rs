use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{otaha_with, DriverSelection, FlowObjective, LazyOptions};
use crate::controllability::DriverSet;
use crate::error::Result;
use crate::temporal::TemporalNetwork;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SeedStrategy {
    /// Single-node seeds in random order.
    Random,
    /// Single-node seeds by decreasing total temporal degree.
    DegreeSeeded,
}

/// Up to `count` distinct driver sets: the unseeded lazy greedy result first, then
/// runs pre-seeded with one node each. Runs ending in an already returned set are
/// dropped.
pub fn multi_solutions(
    net: &TemporalNetwork,
    count: usize,
    strategy: SeedStrategy,
    seed: u64,
) -> Result<Vec<DriverSelection>> {
    let obj = FlowObjective::new(net);
    let mut out: Vec<DriverSelection> = Vec::new();
    let mut seen: Vec<DriverSet> = Vec::new();
    if count == 0 {
        return Ok(out);
    }
    let plain = otaha_with(&obj, &[], LazyOptions::default())?;
    seen.push(plain.driver_set());
    out.push(plain);

    let n = net.node_count();
    let mut order: Vec<usize> = (0..n).collect();
    match strategy {
        SeedStrategy::Random => order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
        SeedStrategy::DegreeSeeded => {
            let degree = net.total_degrees();
            order.sort_by_key(|&v| (std::cmp::Reverse(degree[v]), v));
        }
    }
    for v in order {
        if out.len() >= count {
            break;
        }
        let sel = otaha_with(&obj, &[v], LazyOptions::default())?;
        let set = sel.driver_set();
        if !seen.contains(&set) {
            seen.push(set);
            out.push(sel);
        }
    }
    Ok(out)
}
