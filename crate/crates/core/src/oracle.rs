//! Numeric cross-check of structural results: draws generic weights for the snapshot
//! structure and computes the rank of the temporal controllability matrix.

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::controllability::DriverSet;
use crate::error::{Error, Result};
use crate::temporal::TemporalNetwork;

pub const MAX_ORACLE_NODES: usize = 30;
pub const MAX_ORACLE_STEPS: usize = 30;
pub const RANK_TOLERANCE: f64 = 1e-9;

/// Weighted matrices `A(t)` for every snapshot plus the input matrix `B`.
#[derive(Debug, Clone)]
pub struct NumericRealization {
    pub t0: usize,
    pub transitions: Vec<DMatrix<f64>>,
    pub input: DMatrix<f64>,
}

impl NumericRealization {
    /// Draws every structural nonzero i.i.d. uniform on `[0.5, 1.5]`.
    ///
    /// Entry `A(t)[j][i]` carries edge `i -> j` of snapshot `t`; the diagonal carries
    /// state retention when the network has self-loops.
    pub fn random(net: &TemporalNetwork, drivers: &DriverSet, seed: u64) -> Result<Self> {
        let n = net.node_count();
        drivers.validate(n)?;
        if n > MAX_ORACLE_NODES || net.steps() > MAX_ORACLE_STEPS {
            return Err(Error::SizeGuard(format!(
                "rank oracle limited to {MAX_ORACLE_NODES} nodes and {MAX_ORACLE_STEPS} steps"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut weight = || rng.gen_range(0.5..=1.5);
        let transitions = (net.t0()..net.t1())
            .map(|t| {
                let mut a = DMatrix::zeros(n, n);
                if net.self_loops() {
                    for i in 0..n {
                        a[(i, i)] = weight();
                    }
                }
                for &(i, j) in net.snapshot(t) {
                    a[(j, i)] = weight();
                }
                a
            })
            .collect();
        let mut input = DMatrix::zeros(n, drivers.len());
        for (col, &v) in drivers.nodes().iter().enumerate() {
            input[(v, col)] = 1.0;
        }
        Ok(Self {
            t0: net.t0(),
            transitions,
            input,
        })
    }

    pub fn state_dimension(&self) -> usize {
        self.input.nrows()
    }

    /// `C(t0, t1) = [Φ(t1, t0+1) B, …, Φ(t1, t1-1) B, B]` with
    /// `Φ(l, h) = A(l-1) ⋯ A(h)`.
    pub fn controllability_matrix(&self) -> DMatrix<f64> {
        let n = self.state_dimension();
        let m = self.input.ncols();
        let steps = self.transitions.len();
        let mut c = DMatrix::zeros(n, m * steps);
        let mut phi = DMatrix::<f64>::identity(n, n);
        // block for input time t sits at column offset (t - t0) * m
        for k in (0..steps).rev() {
            let block = &phi * &self.input;
            c.view_mut((0, k * m), (n, m)).copy_from(&block);
            phi = &phi * &self.transitions[k];
        }
        c
    }
}

/// Numeric rank of `C(t0, t1)`; singular values below `1e-9` times the largest count
/// as zero.
pub fn numeric_rank(realization: &NumericRealization) -> usize {
    let c = realization.controllability_matrix();
    if c.ncols() == 0 || c.nrows() == 0 {
        return 0;
    }
    let singular = c.singular_values();
    let largest = singular.iter().copied().fold(0.0, f64::max);
    if largest == 0.0 {
        return 0;
    }
    singular
        .iter()
        .filter(|&&s| s > RANK_TOLERANCE * largest)
        .count()
}

/// Rank for one random weight draw.
pub fn random_rank(net: &TemporalNetwork, drivers: &DriverSet, seed: u64) -> Result<usize> {
    Ok(numeric_rank(&NumericRealization::random(net, drivers, seed)?))
}
