use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::Instant;

use super::{Algorithm, DriverSelection, FlowObjective, Objective};
use crate::controllability::DriverSet;
use crate::error::{Error, Result};
use crate::temporal::TemporalNetwork;

#[derive(Debug, Clone, Copy, Default)]
pub struct LazyOptions {
    /// Always recompute the popped node's gain, even if it was already updated in the
    /// current iteration.
    pub strict: bool,
}

/// Online time-accelerated lazy greedy on the flow objective.
pub fn otaha(net: &TemporalNetwork) -> Result<DriverSelection> {
    otaha_with(&FlowObjective::new(net), &[], LazyOptions::default())
}

/// As [`otaha`], with `seed` pre-selected before the search starts.
pub fn otaha_seeded(net: &TemporalNetwork, seed: &DriverSet) -> Result<DriverSelection> {
    seed.validate(net.node_count())?;
    otaha_with(&FlowObjective::new(net), seed.nodes(), LazyOptions::default())
}

type Key = (usize, Reverse<usize>);

/// Lazy greedy over any [`Objective`].
///
/// After one independent evaluation per node, each iteration pops the node with the
/// largest (possibly outdated) gain, recomputes it against the current state and
/// selects it if it still beats every other key `(gain, -id)`; otherwise it is pushed
/// back. A node popped a second time in the same iteration already carries a gain
/// computed against the current state and is selected without another evaluation.
pub fn otaha_with<O: Objective>(obj: &O, seed: &[usize], options: LazyOptions) -> Result<DriverSelection> {
    let started = Instant::now();
    let n = obj.ground_size();
    let target = obj.target();
    let all: Vec<usize> = (0..n).collect();
    let reachable = obj.evaluate(&all)?;
    if reachable < target {
        return Err(Error::Uncontrollable {
            dimension: reachable,
            n: target,
        });
    }

    let mut sel = DriverSelection::new(Algorithm::Otaha);
    let mut selected = vec![false; n];
    let mut base = obj.empty_state();
    for &v in seed {
        if v >= n {
            return Err(Error::NodeOutOfRange { node: v, n });
        }
        if selected[v] {
            continue;
        }
        let (gain, next) = obj.extend(&base, v)?;
        sel.evaluations += 1;
        sel.push(v, gain, false);
        selected[v] = true;
        base = next;
    }
    sel.seeded = sel.len();

    if obj.value(&base) < target {
        let mut states: Vec<Option<O::State>> = (0..n).map(|_| None).collect();
        let mut heap: BinaryHeap<Key> = BinaryHeap::with_capacity(n);
        for v in (0..n).filter(|&v| !selected[v]) {
            let (gain, state) = obj.extend(&base, v)?;
            sel.evaluations += 1;
            states[v] = Some(state);
            heap.push((gain, Reverse(v)));
        }

        // first pick comes straight from the initialization sweep
        let (gain, Reverse(v)) = heap.pop().ok_or(Error::Uncontrollable {
            dimension: obj.value(&base),
            n: target,
        })?;
        base = states[v].take().expect("initial state present");
        states.iter_mut().for_each(|s| *s = None);
        selected[v] = true;
        sel.push(v, gain, false);

        let mut touched: Vec<usize> = Vec::new();
        while obj.value(&base) < target {
            touched.clear();
            let (v, gain, repicked) = loop {
                let (stale, Reverse(v)) = heap.pop().ok_or(Error::Uncontrollable {
                    dimension: obj.value(&base),
                    n: target,
                })?;
                if !options.strict && states[v].is_some() {
                    break (v, stale, true);
                }
                let (gain, state) = obj.extend(&base, v)?;
                sel.evaluations += 1;
                states[v] = Some(state);
                touched.push(v);
                let key = (gain, Reverse(v));
                if heap.peek().is_none_or(|top| key > *top) {
                    break (v, gain, false);
                }
                heap.push(key);
            };
            base = states[v].take().expect("state computed in this iteration");
            for &u in &touched {
                states[u] = None;
            }
            selected[v] = true;
            sel.push(v, gain, repicked);
        }
    }

    debug_assert_eq!(sel.value(), obj.value(&base));
    sel.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok(sel)
}
