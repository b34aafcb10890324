//! The set function `f(D)`: dimension of the maximum controllable subspace reached
//! from driver set `D` at the target time.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flow::{FlowTopology, ResidualState};
use crate::temporal::TemporalNetwork;

/// A canonical (sorted, duplicate-free) set of driver nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DriverSet(Vec<usize>);

impl DriverSet {
    pub fn new(nodes: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = nodes.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn all(n: usize) -> Self {
        Self((0..n).collect())
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn nodes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, node: usize) -> bool {
        self.0.binary_search(&node).is_ok()
    }

    pub fn with(&self, node: usize) -> Self {
        let mut v = self.0.clone();
        if let Err(pos) = v.binary_search(&node) {
            v.insert(pos, node);
        }
        Self(v)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&v| v >= n) {
            Some(&node) => Err(Error::NodeOutOfRange { node, n }),
            None => Ok(()),
        }
    }
}

impl From<Vec<usize>> for DriverSet {
    fn from(v: Vec<usize>) -> Self {
        Self::new(v)
    }
}

/// Incremental evaluation of `f` over a growing driver set.
#[derive(Debug, Clone)]
pub struct FlowSession {
    state: ResidualState,
}

impl FlowSession {
    pub fn new(net: &TemporalNetwork) -> Self {
        Self::from_topology(Arc::new(FlowTopology::from_network(net)))
    }

    pub fn from_topology(topo: Arc<FlowTopology>) -> Self {
        Self {
            state: ResidualState::new(topo),
        }
    }

    /// Adds a driver and returns its marginal gain.
    pub fn add_driver(&mut self, node: usize) -> Result<usize> {
        self.state.add_driver(node)
    }

    pub fn dimension(&self) -> usize {
        self.state.flow_value()
    }

    pub fn drivers(&self) -> &[usize] {
        self.state.drivers()
    }

    pub fn state(&self) -> &ResidualState {
        &self.state
    }

    pub fn into_state(self) -> ResidualState {
        self.state
    }
}

/// `f(D)` computed from scratch.
pub fn controllable_dimension(net: &TemporalNetwork, drivers: &DriverSet) -> Result<usize> {
    drivers.validate(net.node_count())?;
    let topo = Arc::new(FlowTopology::from_network(net));
    dimension_on(&topo, drivers)
}

pub(crate) fn dimension_on(topo: &Arc<FlowTopology>, drivers: &DriverSet) -> Result<usize> {
    let mut session = FlowSession::from_topology(Arc::clone(topo));
    for &v in drivers.nodes() {
        session.add_driver(v)?;
    }
    Ok(session.dimension())
}

pub fn is_fully_controllable(net: &TemporalNetwork, drivers: &DriverSet) -> Result<bool> {
    Ok(controllable_dimension(net, drivers)? == net.node_count())
}

/// Memoized `f` for one network.
#[derive(Debug)]
pub struct DimensionCache {
    topo: Arc<FlowTopology>,
    n: usize,
    memo: HashMap<DriverSet, usize>,
}

impl DimensionCache {
    pub fn new(net: &TemporalNetwork) -> Self {
        Self {
            topo: Arc::new(FlowTopology::from_network(net)),
            n: net.node_count(),
            memo: HashMap::new(),
        }
    }

    pub fn dimension(&mut self, drivers: &DriverSet) -> Result<usize> {
        if let Some(&f) = self.memo.get(drivers) {
            return Ok(f);
        }
        drivers.validate(self.n)?;
        let f = dimension_on(&self.topo, drivers)?;
        self.memo.insert(drivers.clone(), f);
        Ok(f)
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubmodularityReport {
    pub trials: usize,
    pub diminishing_returns_violations: usize,
    pub monotonicity_violations: usize,
}

impl SubmodularityReport {
    pub fn is_clean(&self) -> bool {
        self.diminishing_returns_violations == 0 && self.monotonicity_violations == 0
    }
}

/// Samples `P ⊆ Q ⊆ V` and `x ∉ Q` and counts violations of
/// `f(P ∪ {x}) - f(P) >= f(Q ∪ {x}) - f(Q)` and of `f(P ∪ {x}) >= f(P)`.
pub fn check_submodular(net: &TemporalNetwork, trials: usize, seed: u64) -> Result<SubmodularityReport> {
    let n = net.node_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cache = DimensionCache::new(net);
    let mut report = SubmodularityReport {
        trials: 0,
        diminishing_returns_violations: 0,
        monotonicity_violations: 0,
    };
    if n < 1 {
        return Ok(report);
    }
    let mut nodes: Vec<usize> = (0..n).collect();
    for _ in 0..trials {
        nodes.shuffle(&mut rng);
        let x = nodes[0];
        let rest = &nodes[1..];
        let q_size = rng.gen_range(0..=rest.len());
        let p_size = rng.gen_range(0..=q_size);
        let p = DriverSet::new(rest[..p_size].iter().copied());
        let q = DriverSet::new(rest[..q_size].iter().copied());

        let f_p = cache.dimension(&p)?;
        let f_px = cache.dimension(&p.with(x))?;
        let f_q = cache.dimension(&q)?;
        let f_qx = cache.dimension(&q.with(x))?;
        if f_px < f_p || f_qx < f_q {
            report.monotonicity_violations += 1;
        }
        if (f_px as i64 - f_p as i64) < (f_qx as i64 - f_q as i64) {
            report.diminishing_returns_violations += 1;
        }
        report.trials += 1;
    }
    Ok(report)
}
