use std::time::Instant;

use super::{Algorithm, DriverSelection, FlowObjective, Objective};
use crate::error::{Error, Result};
use crate::temporal::TemporalNetwork;

pub const DEFAULT_SIZE_GUARD: usize = 24;

#[derive(Debug, Clone, Copy, Default)]
pub struct BruteForceOptions {
    /// Largest cardinality to try; `None` tries up to `n`.
    pub max_size: Option<usize>,
    /// Skip the refusal for networks above [`DEFAULT_SIZE_GUARD`] nodes.
    pub allow_large: bool,
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BruteForceResult {
    /// Minimum number of drivers `N_D`, or `None` if no set up to `max_size` works.
    pub min_size: Option<usize>,
    /// Every driver set of size `min_size` achieving full control, lexicographic.
    pub sets: Vec<Vec<usize>>,
    pub evaluations: usize,
    pub elapsed_ms: f64,
}

impl BruteForceResult {
    /// The lexicographically first optimal set as a selection record.
    pub fn first_selection<O: Objective>(&self, obj: &O) -> Result<Option<DriverSelection>> {
        let Some(set) = self.sets.first() else {
            return Ok(None);
        };
        let mut sel = DriverSelection::new(Algorithm::BruteForce);
        let mut state = obj.empty_state();
        for &v in set {
            let (gain, next) = obj.extend(&state, v)?;
            sel.push(v, gain, false);
            state = next;
        }
        sel.evaluations = self.evaluations;
        sel.elapsed_ms = self.elapsed_ms;
        Ok(Some(sel))
    }
}

pub fn brute_force(net: &TemporalNetwork, options: BruteForceOptions) -> Result<BruteForceResult> {
    brute_force_with(&FlowObjective::new(net), options)
}

/// Enumerates subsets by increasing cardinality and returns every subset of the first
/// cardinality reaching the target.
pub fn brute_force_with<O: Objective>(obj: &O, options: BruteForceOptions) -> Result<BruteForceResult> {
    let started = Instant::now();
    let mut search = Enumeration::new(obj, options)?;
    let limit = options.max_size.unwrap_or(search.n).min(search.n);
    let mut result = BruteForceResult {
        min_size: None,
        sets: Vec::new(),
        evaluations: 0,
        elapsed_ms: 0.0,
    };
    for k in 0..=limit {
        let sets = search.sets_of_size(k, false)?;
        if !sets.is_empty() {
            result.min_size = Some(k);
            result.sets = sets;
            break;
        }
    }
    result.evaluations = search.evaluations;
    result.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    Ok(result)
}

/// Smallest cardinality reaching the target, trying sizes from `lower_bound` up;
/// stops at the first witness.
pub fn minimum_driver_count<O: Objective>(
    obj: &O,
    lower_bound: usize,
    options: BruteForceOptions,
) -> Result<Option<usize>> {
    let mut search = Enumeration::new(obj, options)?;
    let limit = options.max_size.unwrap_or(search.n).min(search.n);
    for k in lower_bound..=limit {
        if !search.sets_of_size(k, true)?.is_empty() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

struct Enumeration<'a, O: Objective> {
    obj: &'a O,
    n: usize,
    target: usize,
    /// singleton values, sorted descending; a node never adds more than `f({v})`
    singles_desc: Vec<usize>,
    evaluations: usize,
}

impl<'a, O: Objective> Enumeration<'a, O> {
    fn new(obj: &'a O, options: BruteForceOptions) -> Result<Self> {
        let n = obj.ground_size();
        if n > DEFAULT_SIZE_GUARD && !options.allow_large {
            return Err(Error::SizeGuard(format!(
                "brute force refuses {n} > {DEFAULT_SIZE_GUARD} nodes without override"
            )));
        }
        let empty = obj.empty_state();
        let mut singles_desc = Vec::with_capacity(n);
        for v in 0..n {
            singles_desc.push(obj.extend(&empty, v)?.0);
        }
        singles_desc.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self {
            obj,
            n,
            target: obj.target(),
            singles_desc,
            evaluations: n,
        })
    }

    fn sets_of_size(&mut self, k: usize, first_only: bool) -> Result<Vec<Vec<usize>>> {
        let mut found = Vec::new();
        let mut prefix = Vec::with_capacity(k);
        let root = self.obj.empty_state();
        self.descend(&root, 0, k, &mut prefix, &mut found, first_only)?;
        Ok(found)
    }

    fn descend(
        &mut self,
        state: &O::State,
        start: usize,
        k: usize,
        prefix: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
        first_only: bool,
    ) -> Result<bool> {
        let value = self.obj.value(state);
        let remaining = k - prefix.len();
        if remaining == 0 {
            if value >= self.target {
                found.push(prefix.clone());
                return Ok(first_only);
            }
            return Ok(false);
        }
        let optimistic: usize = self.singles_desc.iter().take(remaining).sum();
        if value + optimistic < self.target {
            return Ok(false);
        }
        for v in start..=self.n - remaining {
            let (_, next) = self.obj.extend(state, v)?;
            self.evaluations += 1;
            prefix.push(v);
            let stop = self.descend(&next, v + 1, k, prefix, found, first_only)?;
            prefix.pop();
            if stop {
                return Ok(true);
            }
        }
        Ok(false)
    }
}
