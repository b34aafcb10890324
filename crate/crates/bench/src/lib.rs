//! Shared fixtures for the benchmarks.

use tempoctrl_core::{GeneratorSpec, TemporalNetwork};

/// Deterministic ER temporal network used across benchmark groups.
pub fn er_fixture(n: usize, snapshots: usize, p: f64) -> TemporalNetwork {
    GeneratorSpec::er(n, snapshots, p, 42)
        .generate()
        .expect("fixture parameters are valid")
}
