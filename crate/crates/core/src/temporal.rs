//! Temporal network model, edge-list ingestion and the time-layered flow graph.
//!
//! A [`TemporalNetwork`] holds `Δt = t1 - t0` snapshots. Snapshot `t` carries the
//! interactions that move state from layer `t` to layer `t + 1` of the time-layered
//! representation, so the layered graph has `Δt + 1` layers `t0..=t1`.

use std::collections::{BTreeSet, HashMap};
use std::io::BufRead;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A directed interaction `source -> target` active during snapshot `time`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TemporalEdge {
    pub time: usize,
    pub source: usize,
    pub target: usize,
}

impl TemporalEdge {
    pub fn new(source: usize, target: usize, time: usize) -> Self {
        Self {
            time,
            source,
            target,
        }
    }

    pub fn is_self_edge(&self) -> bool {
        self.source == self.target
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "NetworkRepr", into = "NetworkRepr")]
pub struct TemporalNetwork {
    n: usize,
    t0: usize,
    t1: usize,
    self_loops: bool,
    snapshots: Vec<Vec<(usize, usize)>>,
    labels: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct NetworkRepr {
    n: usize,
    t0: usize,
    t1: usize,
    self_loops: bool,
    snapshots: Vec<Vec<[usize; 2]>>,
    #[serde(default)]
    labels: Vec<String>,
}

impl TryFrom<NetworkRepr> for TemporalNetwork {
    type Error = Error;

    fn try_from(repr: NetworkRepr) -> Result<Self> {
        if repr.t1 != repr.t0 + repr.snapshots.len() {
            return Err(Error::InvalidArgument(format!(
                "t1 - t0 = {} but {} snapshots given",
                repr.t1.saturating_sub(repr.t0),
                repr.snapshots.len()
            )));
        }
        let snapshots = repr
            .snapshots
            .into_iter()
            .map(|s| s.into_iter().map(|[i, j]| (i, j)).collect())
            .collect();
        let mut net = TemporalNetwork::new(repr.n, repr.t0, repr.self_loops, snapshots)?;
        if !repr.labels.is_empty() {
            net = net.with_labels(repr.labels)?;
        }
        Ok(net)
    }
}

impl From<TemporalNetwork> for NetworkRepr {
    fn from(net: TemporalNetwork) -> Self {
        NetworkRepr {
            n: net.n,
            t0: net.t0,
            t1: net.t1,
            self_loops: net.self_loops,
            snapshots: net
                .snapshots
                .into_iter()
                .map(|s| s.into_iter().map(|(i, j)| [i, j]).collect())
                .collect(),
            labels: net.labels,
        }
    }
}

impl TemporalNetwork {
    /// Builds a network over `n` nodes whose snapshot `k` is active at time `t0 + k`.
    ///
    /// Edges inside a snapshot are sorted and duplicates collapsed.
    pub fn new(
        n: usize,
        t0: usize,
        self_loops: bool,
        snapshots: Vec<Vec<(usize, usize)>>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("network needs at least one node".into()));
        }
        if snapshots.is_empty() {
            return Err(Error::InvalidArgument(
                "network needs at least one snapshot (t1 > t0)".into(),
            ));
        }
        let mut clean = Vec::with_capacity(snapshots.len());
        for mut snapshot in snapshots {
            for &(i, j) in &snapshot {
                for node in [i, j] {
                    if node >= n {
                        return Err(Error::NodeOutOfRange { node, n });
                    }
                }
            }
            snapshot.sort_unstable();
            snapshot.dedup();
            clean.push(snapshot);
        }
        let t1 = t0 + clean.len();
        Ok(Self {
            n,
            t0,
            t1,
            self_loops,
            snapshots: clean,
            labels: (0..n).map(|i| i.to_string()).collect(),
        })
    }

    pub fn from_edges(
        n: usize,
        snapshot_count: usize,
        self_loops: bool,
        edges: impl IntoIterator<Item = TemporalEdge>,
    ) -> Result<Self> {
        let mut snapshots = vec![Vec::new(); snapshot_count];
        for e in edges {
            let slot = snapshots.get_mut(e.time).ok_or_else(|| {
                Error::InvalidArgument(format!(
                    "edge time {} outside [0, {snapshot_count})",
                    e.time
                ))
            })?;
            slot.push((e.source, e.target));
        }
        Self::new(n, 0, self_loops, snapshots)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::InvalidArgument(format!(
                "{} labels for {} nodes",
                labels.len(),
                self.n
            )));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn with_self_loops(mut self, self_loops: bool) -> Self {
        self.self_loops = self_loops;
        self
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn t0(&self) -> usize {
        self.t0
    }

    pub fn t1(&self) -> usize {
        self.t1
    }

    /// Number of transition steps `t1 - t0`.
    pub fn steps(&self) -> usize {
        self.t1 - self.t0
    }

    pub fn self_loops(&self) -> bool {
        self.self_loops
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Edges of the snapshot active at absolute time `t`.
    pub fn snapshot(&self, t: usize) -> &[(usize, usize)] {
        &self.snapshots[t - self.t0]
    }

    pub fn snapshots(&self) -> &[Vec<(usize, usize)>] {
        &self.snapshots
    }

    /// Total edge count `M` over all snapshots.
    pub fn edge_count(&self) -> usize {
        self.snapshots.iter().map(Vec::len).sum()
    }

    pub fn non_empty_snapshots(&self) -> usize {
        self.snapshots.iter().filter(|s| !s.is_empty()).count()
    }

    /// All temporal edges ordered by `(time, source, target)`.
    pub fn edges(&self) -> impl Iterator<Item = TemporalEdge> + '_ {
        self.snapshots.iter().enumerate().flat_map(move |(k, s)| {
            s.iter()
                .map(move |&(i, j)| TemporalEdge::new(i, j, self.t0 + k))
        })
    }

    pub fn contains(&self, edge: TemporalEdge) -> bool {
        edge.time >= self.t0
            && edge.time < self.t1
            && self.snapshot(edge.time)
                .binary_search(&(edge.source, edge.target))
                .is_ok()
    }

    /// Copy of the network without the given edges.
    pub fn without_edges(&self, removed: &[TemporalEdge]) -> Self {
        let mut net = self.clone();
        for e in removed {
            if e.time < self.t0 || e.time >= self.t1 {
                continue;
            }
            let snapshot = &mut net.snapshots[e.time - self.t0];
            if let Ok(pos) = snapshot.binary_search(&(e.source, e.target)) {
                snapshot.remove(pos);
            }
        }
        net
    }

    /// Sum of in- and out-degrees over all snapshots, per node.
    pub fn total_degrees(&self) -> Vec<usize> {
        let mut degree = vec![0; self.n];
        for e in self.edges() {
            degree[e.source] += 1;
            degree[e.target] += 1;
        }
        degree
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Writes `label_i label_j t` lines, one per temporal edge.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for e in self.edges() {
            out.push_str(&self.labels[e.source]);
            out.push(' ');
            out.push_str(&self.labels[e.target]);
            out.push(' ');
            out.push_str(&e.time.to_string());
            out.push('\n');
        }
        out
    }
}

/// Ingestion options for [`parse_temporal_edgelist`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ParseOptions {
    pub resolution: f64,
    #[serde(default = "default_true")]
    pub directed: bool,
    #[serde(default = "default_true")]
    pub self_loops: bool,
}

fn default_true() -> bool {
    true
}

impl Default for ParseOptions {
    fn default() -> Self {
        Self {
            resolution: 1.0,
            directed: true,
            self_loops: true,
        }
    }
}

/// Reads a whitespace-separated `source target timestamp` edge list.
///
/// Timestamps are binned left-closed into `floor((ts - min_ts) / resolution)`. Labels
/// are remapped to dense ids in sorted order (numeric order when every label is an
/// integer), which keeps the mapping stable under re-serialization.
pub fn parse_temporal_edgelist<R: BufRead>(reader: R, options: ParseOptions) -> Result<TemporalNetwork> {
    if !options.resolution.is_finite() || options.resolution <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "time resolution must be positive, got {}",
            options.resolution
        )));
    }

    let mut raw: Vec<(String, String, f64)> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: lineno,
                message: format!("expected `source target timestamp`, found {} fields", fields.len()),
            });
        }
        let ts: f64 = fields[2].parse().map_err(|_| Error::Parse {
            line: lineno,
            message: format!("timestamp `{}` is not numeric", fields[2]),
        })?;
        if !ts.is_finite() {
            return Err(Error::Parse {
                line: lineno,
                message: format!("timestamp `{}` is not finite", fields[2]),
            });
        }
        raw.push((fields[0].to_owned(), fields[1].to_owned(), ts));
    }
    if raw.is_empty() {
        return Err(Error::NoEdges);
    }

    let labels = sorted_labels(raw.iter().flat_map(|(a, b, _)| [a.as_str(), b.as_str()]));
    let index: HashMap<&str, usize> = labels
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();

    let min_ts = raw.iter().map(|r| r.2).fold(f64::INFINITY, f64::min);
    let bins: Vec<usize> = raw
        .iter()
        .map(|r| ((r.2 - min_ts) / options.resolution).floor() as usize)
        .collect();
    let bin_count = bins.iter().max().copied().unwrap_or(0) + 1;

    let mut snapshots = vec![Vec::new(); bin_count];
    for ((a, b, _), &bin) in raw.iter().zip(&bins) {
        let (i, j) = (index[a.as_str()], index[b.as_str()]);
        snapshots[bin].push((i, j));
        if !options.directed {
            snapshots[bin].push((j, i));
        }
    }
    TemporalNetwork::new(labels.len(), 0, options.self_loops, snapshots)?.with_labels(labels)
}

fn sorted_labels<'a>(labels: impl Iterator<Item = &'a str>) -> Vec<String> {
    let unique: BTreeSet<&str> = labels.collect();
    let numeric: Option<Vec<(i64, &str)>> = unique
        .iter()
        .map(|l| l.parse::<i64>().ok().map(|v| (v, *l)))
        .collect();
    match numeric {
        Some(mut pairs) => {
            pairs.sort();
            pairs.into_iter().map(|(_, l)| l.to_owned()).collect()
        }
        None => unique.into_iter().map(str::to_owned).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayeredEdgeKind {
    /// `in(i, t) -> out(i, t)`, enforcing unit node capacity.
    Split,
    /// `out(i, t) -> in(j, t + 1)` for a temporal edge.
    Transition(TemporalEdge),
    /// `out(i, t) -> in(i, t + 1)` when nodes retain their state.
    Retention,
    /// `out(i, t1) -> sink`.
    Sink,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LayeredEdge {
    pub tail: usize,
    pub head: usize,
    pub kind: LayeredEdgeKind,
}

/// Split-node, unit-capacity auxiliary graph over layers `t0..=t1`.
///
/// Node numbering is layer-major, node-minor, with the in-copy before the out-copy;
/// the virtual source and sink come last.
#[derive(Debug, Clone)]
pub struct LayeredFlowGraph {
    n: usize,
    t0: usize,
    layers: usize,
    edges: Vec<LayeredEdge>,
}

impl LayeredFlowGraph {
    pub fn build(net: &TemporalNetwork) -> Self {
        let n = net.node_count();
        let layers = net.steps() + 1;
        let mut graph = Self {
            n,
            t0: net.t0(),
            layers,
            edges: Vec::new(),
        };
        let mut edges = Vec::with_capacity(n * layers * 2 + net.edge_count());
        for layer in 0..layers {
            for i in 0..n {
                edges.push(LayeredEdge {
                    tail: graph.in_copy(i, layer),
                    head: graph.out_copy(i, layer),
                    kind: LayeredEdgeKind::Split,
                });
            }
        }
        for layer in 0..layers - 1 {
            let t = net.t0() + layer;
            for &(i, j) in net.snapshot(t) {
                edges.push(LayeredEdge {
                    tail: graph.out_copy(i, layer),
                    head: graph.in_copy(j, layer + 1),
                    kind: LayeredEdgeKind::Transition(TemporalEdge::new(i, j, t)),
                });
            }
            if net.self_loops() {
                for i in 0..n {
                    edges.push(LayeredEdge {
                        tail: graph.out_copy(i, layer),
                        head: graph.in_copy(i, layer + 1),
                        kind: LayeredEdgeKind::Retention,
                    });
                }
            }
        }
        for i in 0..n {
            edges.push(LayeredEdge {
                tail: graph.out_copy(i, layers - 1),
                head: graph.sink(),
                kind: LayeredEdgeKind::Sink,
            });
        }
        graph.edges = edges;
        graph
    }

    pub fn node_count(&self) -> usize {
        2 * self.n * self.layers + 2
    }

    pub fn network_size(&self) -> usize {
        self.n
    }

    pub fn layers(&self) -> usize {
        self.layers
    }

    pub fn t0(&self) -> usize {
        self.t0
    }

    /// Layer index (0-based, relative to `t0`) of the target time `t1`.
    pub fn last_layer(&self) -> usize {
        self.layers - 1
    }

    pub fn in_copy(&self, node: usize, layer: usize) -> usize {
        2 * (layer * self.n + node)
    }

    pub fn out_copy(&self, node: usize, layer: usize) -> usize {
        2 * (layer * self.n + node) + 1
    }

    pub fn source(&self) -> usize {
        2 * self.n * self.layers
    }

    pub fn sink(&self) -> usize {
        2 * self.n * self.layers + 1
    }

    /// `(node, layer, is_out_copy)` for a layered copy; `None` for source and sink.
    pub fn locate(&self, id: usize) -> Option<(usize, usize, bool)> {
        if id >= self.source() {
            return None;
        }
        let pair = id / 2;
        Some((pair % self.n, pair / self.n, id % 2 == 1))
    }

    pub fn edges(&self) -> &[LayeredEdge] {
        &self.edges
    }

    pub fn count(&self, pred: impl Fn(&LayeredEdgeKind) -> bool) -> usize {
        self.edges.iter().filter(|e| pred(&e.kind)).count()
    }

    /// Edge count `E` of the auxiliary graph as used for complexity accounting:
    /// split edges of the copies at layers after `t0`, transition edges and retention
    /// edges. Equals `N·Δt + M`, or `2N·Δt + M` with state retention.
    pub fn auxiliary_edge_count(&self) -> usize {
        self.edges
            .iter()
            .filter(|e| match e.kind {
                LayeredEdgeKind::Split => self.locate(e.tail).is_some_and(|(_, l, _)| l > 0),
                LayeredEdgeKind::Transition(_) | LayeredEdgeKind::Retention => true,
                LayeredEdgeKind::Sink => false,
            })
            .count()
    }
}
