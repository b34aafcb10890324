//! Structural controllability of temporal networks.
//!
//! The crate maps a driver set to the dimension of its maximum controllable subspace
//! through a unit-capacity max-flow on the time-layered network, and detects small
//! driver sets with a lazy greedy search whose marginal gains are max-flow increments
//! on a persistent residual graph.

pub mod controllability;
pub mod detect;
pub mod edges;
pub mod error;
pub mod flow;
pub mod generate;
pub mod oracle;
pub mod temporal;

pub use controllability::{controllable_dimension, is_fully_controllable, DriverSet, FlowSession};
pub use detect::{
    brute_force, check_bound, greedy_baseline, multi_solutions, otaha, otaha_seeded, DriverSelection,
};
pub use error::{Error, Result};
pub use flow::{FlowTopology, ResidualState, SearchOrder};
pub use generate::{GeneratorSpec, Model};
pub use temporal::{
    parse_temporal_edgelist, LayeredFlowGraph, ParseOptions, TemporalEdge, TemporalNetwork,
};
