//! Driver-node detection.
//!
//! All searches run against an [`Objective`]: a monotone set function over `0..n` that
//! can be evaluated from scratch or extended incrementally from a saved state. The
//! flow-backed objective uses residual graphs as states, so extending a state by one
//! node costs one max-flow increment.

mod brute;
mod greedy;
mod lazy;
mod multi;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::controllability::DriverSet;
use crate::error::Result;
use crate::flow::{FlowTopology, ResidualState};
use crate::temporal::TemporalNetwork;

pub use brute::{brute_force, brute_force_with, minimum_driver_count, BruteForceOptions, BruteForceResult};
pub use greedy::{greedy_baseline, greedy_with};
pub use lazy::{otaha, otaha_seeded, otaha_with, LazyOptions};
pub use multi::{multi_solutions, SeedStrategy};

/// A monotone set function over the ground set `0..ground_size()`.
pub trait Objective {
    type State: Clone;

    fn ground_size(&self) -> usize;

    /// Value that counts as full control.
    fn target(&self) -> usize;

    fn empty_state(&self) -> Self::State;

    fn value(&self, state: &Self::State) -> usize;

    /// Adds `node` to a copy of `state`; returns the marginal gain and the new state.
    fn extend(&self, state: &Self::State, node: usize) -> Result<(usize, Self::State)>;

    /// Evaluates the set from scratch.
    fn evaluate(&self, set: &[usize]) -> Result<usize>;
}

/// `f(D)` on a temporal network, with residual graphs as incremental states.
#[derive(Debug, Clone)]
pub struct FlowObjective {
    topo: Arc<FlowTopology>,
    n: usize,
}

impl FlowObjective {
    pub fn new(net: &TemporalNetwork) -> Self {
        Self {
            topo: Arc::new(FlowTopology::from_network(net)),
            n: net.node_count(),
        }
    }
}

impl Objective for FlowObjective {
    type State = ResidualState;

    fn ground_size(&self) -> usize {
        self.n
    }

    fn target(&self) -> usize {
        self.n
    }

    fn empty_state(&self) -> ResidualState {
        ResidualState::new(Arc::clone(&self.topo))
    }

    fn value(&self, state: &ResidualState) -> usize {
        state.flow_value()
    }

    fn extend(&self, state: &ResidualState, node: usize) -> Result<(usize, ResidualState)> {
        let mut next = state.clone();
        let gain = next.add_driver(node)?;
        Ok((gain, next))
    }

    fn evaluate(&self, set: &[usize]) -> Result<usize> {
        let mut state = self.empty_state();
        for &v in set {
            state.add_driver(v)?;
        }
        Ok(state.flow_value())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Otaha,
    Greedy,
    BruteForce,
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Algorithm::Otaha => "otaha",
            Algorithm::Greedy => "greedy",
            Algorithm::BruteForce => "brute",
        })
    }
}

/// Drivers in selection order with per-step gains and the cumulative `f` trace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DriverSelection {
    pub algorithm: Algorithm,
    pub drivers: Vec<usize>,
    pub gains: Vec<usize>,
    pub f_trace: Vec<usize>,
    /// Leading entries of `drivers` that came from a seed rather than the search.
    #[serde(default)]
    pub seeded: usize,
    /// Per step: selected through the "already updated in this iteration" branch.
    #[serde(default)]
    pub repicked: Vec<bool>,
    pub evaluations: usize,
    pub elapsed_ms: f64,
}

impl DriverSelection {
    fn new(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            drivers: Vec::new(),
            gains: Vec::new(),
            f_trace: Vec::new(),
            seeded: 0,
            repicked: Vec::new(),
            evaluations: 0,
            elapsed_ms: 0.0,
        }
    }

    fn push(&mut self, node: usize, gain: usize, repicked: bool) {
        let f = self.value() + gain;
        self.drivers.push(node);
        self.gains.push(gain);
        self.f_trace.push(f);
        self.repicked.push(repicked);
    }

    pub fn value(&self) -> usize {
        self.f_trace.last().copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.drivers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.drivers.is_empty()
    }

    pub fn driver_set(&self) -> DriverSet {
        DriverSet::new(self.drivers.iter().copied())
    }
}

/// `ℓ <= (1 + ln f(D_1)) · N_D`, with `ℓ` the selection size.
pub fn check_bound(selection: &DriverSelection, n_d: usize) -> bool {
    let Some(&first) = selection.f_trace.first() else {
        return true;
    };
    if first == 0 {
        return selection.len() <= n_d;
    }
    selection.len() as f64 <= (1.0 + (first as f64).ln()) * n_d as f64
}
