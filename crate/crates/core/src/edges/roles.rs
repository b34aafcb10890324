use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::controllability::DriverSet;
use crate::detect::{
    brute_force_with, minimum_driver_count, otaha_with, BruteForceOptions, FlowObjective,
    LazyOptions, Objective,
};
use crate::error::{Error, Result};
use crate::temporal::{TemporalEdge, TemporalNetwork};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeRole {
    /// Removal raises the minimum number of drivers.
    Critical,
    /// Removal keeps the minimum count but the reference set no longer suffices.
    Ordinary,
    /// The reference set still controls the network after removal.
    Redundant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    /// Minimum driver counts from exhaustive search.
    Exact,
    /// Driver counts from lazy greedy, an upper bound on the minimum.
    Approximate,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeClassification {
    pub provenance: Provenance,
    pub n_d: usize,
    pub reference: DriverSet,
    pub roles: Vec<(TemporalEdge, EdgeRole)>,
}

impl EdgeClassification {
    pub fn count(&self, role: EdgeRole) -> usize {
        self.roles.iter().filter(|(_, r)| *r == role).count()
    }

    pub fn fraction(&self, role: EdgeRole) -> f64 {
        if self.roles.is_empty() {
            return 0.0;
        }
        self.count(role) as f64 / self.roles.len() as f64
    }

    pub fn role_of(&self, edge: TemporalEdge) -> Option<EdgeRole> {
        self.roles.iter().find(|(e, _)| *e == edge).map(|(_, r)| *r)
    }
}

/// Classifies every temporal edge (self-edges excluded) by the effect of removing it
/// alone.
///
/// Networks with at most `exact_threshold` nodes use brute force for the reference
/// set and every perturbed minimum; larger ones use lazy greedy and are reported as
/// approximate.
pub fn classify_edges(net: &TemporalNetwork, exact_threshold: usize) -> Result<EdgeClassification> {
    let n = net.node_count();
    let provenance = if n <= exact_threshold {
        Provenance::Exact
    } else {
        Provenance::Approximate
    };
    let brute = BruteForceOptions {
        max_size: None,
        allow_large: true,
    };
    let obj = FlowObjective::new(net);
    let reference = match provenance {
        Provenance::Exact => {
            let result = brute_force_with(&obj, brute)?;
            let set = result.sets.into_iter().next().ok_or(Error::Uncontrollable {
                dimension: obj.evaluate(&(0..n).collect::<Vec<_>>())?,
                n,
            })?;
            DriverSet::new(set)
        }
        Provenance::Approximate => otaha_with(&obj, &[], LazyOptions::default())?.driver_set(),
    };
    let n_d = reference.len();

    let candidates: Vec<TemporalEdge> = net.edges().filter(|e| !e.is_self_edge()).collect();
    let roles = candidates
        .par_iter()
        .map(|&edge| {
            let pruned = net.without_edges(&[edge]);
            let obj = FlowObjective::new(&pruned);
            if obj.evaluate(reference.nodes())? == n {
                return Ok((edge, EdgeRole::Redundant));
            }
            let still_enough = match provenance {
                // removing an edge never lowers the minimum, so search from n_d up
                Provenance::Exact => {
                    minimum_driver_count(&obj, n_d, BruteForceOptions { max_size: Some(n_d), allow_large: true })?
                        .is_some()
                }
                Provenance::Approximate => otaha_with(&obj, &[], LazyOptions::default())?.len() <= n_d,
            };
            let role = if still_enough {
                EdgeRole::Ordinary
            } else {
                EdgeRole::Critical
            };
            Ok((edge, role))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(EdgeClassification {
        provenance,
        n_d,
        reference,
        roles,
    })
}
