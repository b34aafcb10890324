//! Edge roles, edge betweenness on the time-layered graph and edge-removal attacks.

mod attack;
mod betweenness;
mod roles;

pub use attack::{
    attack_simulation, betweenness_order, sample_fractions, AttackOptions, AttackPoint,
    AttackStrategy, AttackTrace,
};
pub use betweenness::{edge_betweenness, temporal_edge_betweenness, temporal_edge_betweenness_with};
pub use roles::{classify_edges, EdgeClassification, EdgeRole, Provenance};
