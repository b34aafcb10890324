//! Unit-capacity max-flow with a persistent residual graph.
//!
//! The topology (arcs and adjacency) is immutable and shared between residual states;
//! a [`ResidualState`] only owns one residual bit per arc plus the source attachments
//! made so far, so cloning a state is a flat copy.
//!
//! Source attachments can be added to a state that already carries a maximum flow.
//! Running Ford-Fulkerson again from that residual yields exactly the increase of the
//! maximum flow caused by the new source edges, without replaying earlier augmentations.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::temporal::{LayeredFlowGraph, TemporalNetwork};

/// Neighbor exploration order used when searching for augmenting paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SearchOrder {
    #[default]
    BreadthFirst,
    DepthFirst,
}

#[derive(Debug, Clone, Copy)]
struct Layout {
    n: usize,
    layers: usize,
}

/// Immutable arc structure of a unit-capacity flow network.
///
/// Arc `2k` is the forward copy of edge `k`, arc `2k + 1` its reverse. Adjacency lists
/// are sorted by head id so searches are deterministic.
#[derive(Debug)]
pub struct FlowTopology {
    node_count: usize,
    source: usize,
    sink: usize,
    heads: Vec<u32>,
    offsets: Vec<u32>,
    adjacency: Vec<u32>,
    layout: Option<Layout>,
}

impl FlowTopology {
    /// Builds a topology from unit-capacity edges `(tail, head)`.
    pub fn from_edges(
        node_count: usize,
        source: usize,
        sink: usize,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        for &(u, v) in edges {
            for node in [u, v] {
                if node >= node_count {
                    return Err(Error::NodeOutOfRange {
                        node,
                        n: node_count,
                    });
                }
            }
        }
        if source >= node_count || sink >= node_count || source == sink {
            return Err(Error::InvalidArgument(format!(
                "source {source} and sink {sink} must be distinct nodes below {node_count}"
            )));
        }
        let mut heads = Vec::with_capacity(edges.len() * 2);
        let mut degree = vec![0u32; node_count + 1];
        for &(u, v) in edges {
            heads.push(v as u32);
            heads.push(u as u32);
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = vec![0u32; node_count + 1];
        for i in 0..node_count {
            offsets[i + 1] = offsets[i] + degree[i];
        }
        let mut fill = offsets.clone();
        let mut adjacency = vec![0u32; heads.len()];
        for (k, &(u, v)) in edges.iter().enumerate() {
            adjacency[fill[u] as usize] = (2 * k) as u32;
            fill[u] += 1;
            adjacency[fill[v] as usize] = (2 * k + 1) as u32;
            fill[v] += 1;
        }
        for i in 0..node_count {
            let slice = &mut adjacency[offsets[i] as usize..offsets[i + 1] as usize];
            slice.sort_by_key(|&a| (heads[a as usize], a));
        }
        Ok(Self {
            node_count,
            source,
            sink,
            heads,
            offsets,
            adjacency,
            layout: None,
        })
    }

    pub fn from_layered(graph: &LayeredFlowGraph) -> Self {
        let edges: Vec<(usize, usize)> = graph.edges().iter().map(|e| (e.tail, e.head)).collect();
        let mut topo = Self::from_edges(graph.node_count(), graph.source(), graph.sink(), &edges)
            .expect("layered graph endpoints are in range");
        topo.layout = Some(Layout {
            n: graph.network_size(),
            layers: graph.layers(),
        });
        topo
    }

    pub fn from_network(net: &TemporalNetwork) -> Self {
        Self::from_layered(&LayeredFlowGraph::build(net))
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.heads.len() / 2
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn sink(&self) -> usize {
        self.sink
    }

    /// Number of network nodes when built from a temporal network.
    pub fn network_size(&self) -> Option<usize> {
        self.layout.map(|l| l.n)
    }

    fn arcs_of(&self, node: usize) -> &[u32] {
        &self.adjacency[self.offsets[node] as usize..self.offsets[node + 1] as usize]
    }

    fn tail(&self, arc: usize) -> usize {
        self.heads[arc ^ 1] as usize
    }

    /// In-copies a driver attaches to: layers `t0 + 1 ..= t1`, the layers where an
    /// input injected at time `t` shows up in the state.
    fn driver_attachments(&self, node: usize) -> Result<Vec<usize>> {
        let layout = self.layout.ok_or_else(|| {
            Error::InvalidArgument("topology was not built from a temporal network".into())
        })?;
        if node >= layout.n {
            return Err(Error::NodeOutOfRange {
                node,
                n: layout.n,
            });
        }
        Ok((1..layout.layers)
            .map(|layer| 2 * (layer * layout.n + node))
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct SourceArc {
    head: u32,
    residual: bool,
}

/// Residual graph for the current set of source attachments, at maximum flow after
/// every public mutation.
#[derive(Debug, Clone)]
pub struct ResidualState {
    topo: Arc<FlowTopology>,
    residual: Vec<bool>,
    source_arcs: Vec<SourceArc>,
    drivers: Vec<usize>,
    flow: usize,
    order: SearchOrder,
}

impl ResidualState {
    /// Zero flow on `topo`, followed by a max-flow over its own source arcs (if any).
    pub fn new(topo: Arc<FlowTopology>) -> Self {
        Self::with_order(topo, SearchOrder::BreadthFirst)
    }

    pub fn with_order(topo: Arc<FlowTopology>, order: SearchOrder) -> Self {
        let residual = (0..topo.heads.len()).map(|a| a % 2 == 0).collect();
        let mut state = Self {
            topo,
            residual,
            source_arcs: Vec::new(),
            drivers: Vec::new(),
            flow: 0,
            order,
        };
        state.max_flow();
        state
    }

    pub fn for_network(net: &TemporalNetwork) -> Self {
        Self::new(Arc::new(FlowTopology::from_network(net)))
    }

    pub fn topology(&self) -> &Arc<FlowTopology> {
        &self.topo
    }

    pub fn flow_value(&self) -> usize {
        self.flow
    }

    /// Drivers attached so far, in attachment order.
    pub fn drivers(&self) -> &[usize] {
        &self.drivers
    }

    pub fn has_driver(&self, node: usize) -> bool {
        self.drivers.contains(&node)
    }

    pub fn source_out_degree(&self) -> usize {
        self.topo.arcs_of(self.topo.source).iter().filter(|&&a| a % 2 == 0).count()
            + self.source_arcs.len()
    }

    pub fn sink_in_degree(&self) -> usize {
        self.topo
            .arcs_of(self.topo.sink)
            .iter()
            .filter(|&&a| a % 2 == 1)
            .count()
    }

    /// Augments until no source-to-sink path remains; returns the number of
    /// augmentations.
    pub fn max_flow(&mut self) -> usize {
        let mut search = Search::new(self.topo.node_count);
        let mut increment = 0;
        while self.augment(&mut search) {
            increment += 1;
        }
        self.flow += increment;
        increment
    }

    /// Adds unit source edges to the given nodes and returns the max-flow increment.
    pub fn add_source_edges(&mut self, heads: &[usize]) -> Result<usize> {
        for &h in heads {
            if h >= self.topo.node_count {
                return Err(Error::NodeOutOfRange {
                    node: h,
                    n: self.topo.node_count,
                });
            }
        }
        for &h in heads {
            let arc = SourceArc {
                head: h as u32,
                residual: true,
            };
            let pos = self.source_arcs.partition_point(|a| a.head <= arc.head);
            self.source_arcs.insert(pos, arc);
        }
        Ok(self.max_flow())
    }

    /// Attaches `node` as a driver (source edges into its in-copies at every layer
    /// after `t0`) and returns the increase of the maximum flow.
    pub fn add_driver(&mut self, node: usize) -> Result<usize> {
        let heads = self.topo.driver_attachments(node)?;
        if self.has_driver(node) {
            return Err(Error::InvalidArgument(format!("driver {node} already attached")));
        }
        self.drivers.push(node);
        self.add_source_edges(&heads)
    }

    /// Whether the residual graph still contains a source-to-sink path.
    pub fn has_augmenting_path(&self) -> bool {
        let mut search = Search::new(self.topo.node_count);
        search.find(self, SearchOrder::BreadthFirst)
    }

    fn augment(&mut self, search: &mut Search) -> bool {
        if !search.find(self, self.order) {
            return false;
        }
        let mut node = self.topo.sink;
        loop {
            match search.parent[node] {
                Parent::Arc(arc) => {
                    let arc = arc as usize;
                    self.residual[arc] = false;
                    self.residual[arc ^ 1] = true;
                    node = self.topo.tail(arc);
                }
                Parent::SourceArc(idx) => {
                    self.source_arcs[idx as usize].residual = false;
                    break;
                }
                Parent::None => break,
            }
        }
        true
    }

    /// Debug dump of the residual graph: every arc with its residual bit.
    pub fn to_debug_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Dump<'a> {
            flow: usize,
            drivers: &'a [usize],
            source: usize,
            sink: usize,
            arcs: Vec<(usize, usize, u8)>,
            source_arcs: Vec<(usize, u8)>,
        }
        let arcs = (0..self.topo.heads.len())
            .map(|a| (self.topo.tail(a), self.topo.heads[a] as usize, self.residual[a] as u8))
            .collect();
        serde_json::to_value(Dump {
            flow: self.flow,
            drivers: &self.drivers,
            source: self.topo.source,
            sink: self.topo.sink,
            arcs,
            source_arcs: self
                .source_arcs
                .iter()
                .map(|a| (a.head as usize, a.residual as u8))
                .collect(),
        })
        .expect("residual dump serializes")
    }

    /// Residual bit of edge `k` in forward and backward direction.
    pub fn edge_residuals(&self, edge: usize) -> (bool, bool) {
        (self.residual[2 * edge], self.residual[2 * edge + 1])
    }
}

#[derive(Debug, Clone, Copy)]
enum Parent {
    None,
    Arc(u32),
    SourceArc(u32),
}

struct Search {
    parent: Vec<Parent>,
    stamp: Vec<u32>,
    epoch: u32,
    frontier: Vec<usize>,
}

impl Search {
    fn new(node_count: usize) -> Self {
        Self {
            parent: vec![Parent::None; node_count],
            stamp: vec![0; node_count],
            epoch: 0,
            frontier: Vec::new(),
        }
    }

    fn visit(&mut self, node: usize, parent: Parent) -> bool {
        if self.stamp[node] == self.epoch {
            return false;
        }
        self.stamp[node] = self.epoch;
        self.parent[node] = parent;
        true
    }

    /// Searches for an augmenting path and records it in `parent`.
    fn find(&mut self, state: &ResidualState, order: SearchOrder) -> bool {
        let topo = &*state.topo;
        self.epoch += 1;
        self.frontier.clear();
        let source = topo.source;
        let sink = topo.sink;
        self.visit(source, Parent::None);

        let mut head = 0;
        self.frontier.push(source);
        while let Some(u) = match order {
            SearchOrder::BreadthFirst => {
                let next = self.frontier.get(head).copied();
                head += 1;
                next
            }
            SearchOrder::DepthFirst => self.frontier.pop(),
        } {
            if u == source {
                for (idx, arc) in state.source_arcs.iter().enumerate() {
                    if arc.residual && self.visit(arc.head as usize, Parent::SourceArc(idx as u32)) {
                        if arc.head as usize == sink {
                            return true;
                        }
                        self.frontier.push(arc.head as usize);
                    }
                }
            }
            for &arc in topo.arcs_of(u) {
                let arc_idx = arc as usize;
                if !state.residual[arc_idx] {
                    continue;
                }
                let v = topo.heads[arc_idx] as usize;
                if self.visit(v, Parent::Arc(arc)) {
                    if v == sink {
                        return true;
                    }
                    self.frontier.push(v);
                }
            }
        }
        false
    }
}
