use std::cmp::Reverse;
use std::time::Instant;

use super::{Algorithm, DriverSelection, FlowObjective, Objective};
use crate::error::{Error, Result};
use crate::temporal::TemporalNetwork;

/// Plain greedy: every iteration re-evaluates `f(D ∪ {v})` from scratch for every
/// unselected `v` and takes the largest gain, lowest id first on ties.
pub fn greedy_baseline(net: &TemporalNetwork) -> Result<DriverSelection> {
    greedy_with(&FlowObjective::new(net))
}

pub fn greedy_with<O: Objective>(obj: &O) -> Result<DriverSelection> {
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

    let mut sel = DriverSelection::new(Algorithm::Greedy);
    let mut selected = vec![false; n];
    let mut current: Vec<usize> = Vec::new();
    while sel.value() < target {
        let f = sel.value();
        let mut best: Option<(usize, Reverse<usize>)> = None;
        for v in (0..n).filter(|&v| !selected[v]) {
            current.push(v);
            let value = obj.evaluate(&current)?;
            current.pop();
            sel.evaluations += 1;
            let key = (value.saturating_sub(f), Reverse(v));
            if best.is_none_or(|b| key > b) {
                best = Some(key);
            }
        }
        let (gain, Reverse(v)) = best.ok_or(Error::Uncontrollable { dimension: f, n: target })?;
        selected[v] = true;
        current.push(v);
        sel.push(v, gain, false);
    }
    sel.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok(sel)
}
