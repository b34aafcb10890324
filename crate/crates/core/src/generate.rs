//! Synthetic temporal networks: Erdős–Rényi and static-model scale-free snapshots.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::temporal::TemporalNetwork;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum Model {
    /// Every ordered pair `i != j` is present in a snapshot with probability `p`.
    Er { p: f64 },
    /// Static model with node weights `i^(-exponent)` and `n * mean_degree / 2`
    /// distinct pairs per snapshot, each oriented uniformly at random.
    ScaleFree { mean_degree: f64, exponent: f64 },
}

pub const DEFAULT_STATIC_EXPONENT: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    #[serde(flatten)]
    pub model: Model,
    pub n: usize,
    pub snapshots: usize,
    pub seed: u64,
    pub self_loops: bool,
}

impl GeneratorSpec {
    pub fn er(n: usize, snapshots: usize, p: f64, seed: u64) -> Self {
        Self {
            model: Model::Er { p },
            n,
            snapshots,
            seed,
            self_loops: true,
        }
    }

    pub fn scale_free(n: usize, snapshots: usize, mean_degree: f64, seed: u64) -> Self {
        Self {
            model: Model::ScaleFree {
                mean_degree,
                exponent: DEFAULT_STATIC_EXPONENT,
            },
            n,
            snapshots,
            seed,
            self_loops: true,
        }
    }

    pub fn generate(&self) -> Result<TemporalNetwork> {
        match self.model {
            Model::Er { .. } => er_temporal(self),
            Model::ScaleFree { .. } => scale_free_temporal(self),
        }
    }

    fn check_sizes(&self) -> Result<()> {
        if self.n == 0 || self.snapshots == 0 {
            return Err(Error::InvalidArgument(
                "node and snapshot counts must be positive".into(),
            ));
        }
        Ok(())
    }
}

pub fn er_temporal(spec: &GeneratorSpec) -> Result<TemporalNetwork> {
    let Model::Er { p } = spec.model else {
        return Err(Error::InvalidArgument("expected an ER spec".into()));
    };
    spec.check_sizes()?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("p must lie in [0, 1], got {p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let n = spec.n;
    let snapshots = (0..spec.snapshots)
        .map(|_| {
            let mut edges = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    if i != j && rng.gen_bool(p) {
                        edges.push((i, j));
                    }
                }
            }
            edges
        })
        .collect();
    TemporalNetwork::new(n, 0, spec.self_loops, snapshots)
}

pub fn scale_free_temporal(spec: &GeneratorSpec) -> Result<TemporalNetwork> {
    let Model::ScaleFree {
        mean_degree,
        exponent,
    } = spec.model
    else {
        return Err(Error::InvalidArgument("expected a scale-free spec".into()));
    };
    spec.check_sizes()?;
    if mean_degree.is_nan() || mean_degree < 0.0 || !exponent.is_finite() || exponent < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "mean degree must be >= 0 and exponent finite and >= 0, got {mean_degree} / {exponent}"
        )));
    }
    let n = spec.n;
    let pairs = (n as f64 * mean_degree / 2.0).round() as usize;
    if pairs > n * (n - 1) / 2 {
        return Err(Error::InvalidArgument(format!(
            "mean degree {mean_degree} too large for a simple graph on {n} nodes"
        )));
    }
    let weights: Vec<f64> = (1..=n).map(|i| (i as f64).powf(-exponent)).collect();
    let total: f64 = weights.iter().sum();
    let mut cumulative = Vec::with_capacity(n);
    let mut acc = 0.0;
    for w in &weights {
        acc += w / total;
        cumulative.push(acc);
    }
    let draw = |rng: &mut ChaCha8Rng| -> usize {
        let u: f64 = rng.gen();
        cumulative.partition_point(|&c| c <= u).min(n - 1)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let snapshots = (0..spec.snapshots)
        .map(|_| {
            let mut seen = HashSet::with_capacity(pairs);
            let mut edges = Vec::with_capacity(pairs);
            while edges.len() < pairs {
                let a = draw(&mut rng);
                let b = draw(&mut rng);
                if a == b {
                    continue;
                }
                let key = (a.min(b), a.max(b));
                if seen.insert(key) {
                    edges.push(if rng.gen_bool(0.5) { (a, b) } else { (b, a) });
                }
            }
            edges
        })
        .collect();
    TemporalNetwork::new(n, 0, spec.self_loops, snapshots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_extremes() {
        let empty = GeneratorSpec::er(6, 4, 0.0, 1).generate().unwrap();
        assert_eq!(empty.edge_count(), 0);
        let full = GeneratorSpec::er(6, 4, 1.0, 1).generate().unwrap();
        assert_eq!(full.edge_count(), 4 * 6 * 5);
    }

    #[test]
    fn er_rejects_bad_probability() {
        assert!(GeneratorSpec::er(6, 4, 1.5, 1).generate().is_err());
        assert!(GeneratorSpec::er(6, 4, -0.1, 1).generate().is_err());
        assert!(GeneratorSpec::er(0, 4, 0.1, 1).generate().is_err());
    }

    #[test]
    fn scale_free_zero_degree_is_edgeless() {
        let net = GeneratorSpec::scale_free(10, 3, 0.0, 5).generate().unwrap();
        assert_eq!(net.edge_count(), 0);
    }

    #[test]
    fn scale_free_fixes_snapshot_size() {
        let net = GeneratorSpec::scale_free(40, 20, 4.0, 9).generate().unwrap();
        for s in net.snapshots() {
            assert_eq!(s.len(), 80);
            for &(i, j) in s {
                assert_ne!(i, j);
                assert!(s.binary_search(&(j, i)).is_err(), "pair realized twice");
            }
        }
    }

    #[test]
    fn scale_free_rejects_dense_request() {
        assert!(GeneratorSpec::scale_free(5, 1, 5.0, 0).generate().is_err());
        assert!(GeneratorSpec::scale_free(5, 1, 4.0, 0).generate().is_ok());
    }

    #[test]
    fn generation_is_deterministic() {
        for spec in [GeneratorSpec::er(12, 5, 0.2, 77), GeneratorSpec::scale_free(12, 5, 2.0, 77)] {
            assert_eq!(spec.generate().unwrap(), spec.generate().unwrap());
        }
        assert_ne!(
            GeneratorSpec::er(12, 5, 0.2, 1).generate().unwrap(),
            GeneratorSpec::er(12, 5, 0.2, 2).generate().unwrap()
        );
    }
}
