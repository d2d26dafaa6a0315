//! Flows, residual graphs, bottlenecks and augmentation.
//!
//! A [`Flow`] is stored densely, one value per edge of the owning
//! [`FlowNetwork`] in edge-list order. Residual graphs keep only arcs with
//! positive residual capacity and remember which original edge produced each
//! arc, so an augmenting path can be pushed back onto the flow without any
//! lookup ambiguity (anti-parallel edges are rejected by validation).

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::network::{Capacity, FlowNetwork, Indexer, NetworkViolation, NodeId};

/// Per-edge flow values aligned with `FlowNetwork::edges`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Flow {
    pub values: Vec<Capacity>,
}

impl Flow {
    pub fn zero(net: &FlowNetwork) -> Self {
        Flow {
            values: vec![0; net.edges.len()],
        }
    }

    /// Flow on the edge `tail→head`, if that edge exists.
    pub fn on(&self, net: &FlowNetwork, tail: &NodeId, head: &NodeId) -> Option<Capacity> {
        net.edge_index(tail, head).map(|i| self.values[i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Error)]
#[serde(tag = "law", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum FlowViolation {
    #[error("flow has {actual} values but the network has {expected} edges")]
    WrongLength { expected: usize, actual: usize },
    #[error("negative flow {flow} on {tail}→{head}")]
    Negative { tail: NodeId, head: NodeId, flow: Capacity },
    #[error("capacity exceeded on {tail}→{head} ({flow} > {capacity})")]
    CapacityExceeded {
        tail: NodeId,
        head: NodeId,
        flow: Capacity,
        capacity: Capacity,
    },
    #[error("conservation at {node} (inflow {inflow}, outflow {outflow})")]
    Conservation {
        node: NodeId,
        inflow: Capacity,
        outflow: Capacity,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("invalid network: {}", join(.0))]
    InvalidNetwork(Vec<NetworkViolation>),
    #[error("invalid flow: {}", join(.0))]
    InvalidFlow(Vec<FlowViolation>),
    #[error("path is empty")]
    EmptyPath,
    #[error("path is broken between {0} and {1}")]
    Broken(NodeId, NodeId),
    #[error("path does not start at the source")]
    NotFromSource,
    #[error("path does not end at the sink")]
    NotToSink,
    #[error("path visits {0} more than once")]
    RepeatedNode(NodeId),
    #[error("arc {0}→{1} is not in the residual graph")]
    ArcNotInResidual(NodeId, NodeId),
    #[error("amount must be positive, got {0}")]
    AmountNotPositive(Capacity),
    #[error("amount {amount} is greater than the bottleneck residual capacity {bottleneck}")]
    AmountExceedsBottleneck { amount: Capacity, bottleneck: Capacity },
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
}

fn require_valid(net: &FlowNetwork) -> Result<(), FlowError> {
    net.validate().map_err(FlowError::InvalidNetwork)
}

/// Checks non-negativity, capacity and conservation.
pub fn check_flow(net: &FlowNetwork, f: &Flow) -> Result<(), Vec<FlowViolation>> {
    if f.values.len() != net.edges.len() {
        return Err(vec![FlowViolation::WrongLength {
            expected: net.edges.len(),
            actual: f.values.len(),
        }]);
    }
    let mut out = Vec::new();
    for (e, &fe) in net.edges.iter().zip(&f.values) {
        if fe < 0 {
            out.push(FlowViolation::Negative {
                tail: e.tail.clone(),
                head: e.head.clone(),
                flow: fe,
            });
        } else if fe > e.capacity {
            out.push(FlowViolation::CapacityExceeded {
                tail: e.tail.clone(),
                head: e.head.clone(),
                flow: fe,
                capacity: e.capacity,
            });
        }
    }
    for v in &net.nodes {
        if Some(v) == net.source.as_ref() || Some(v) == net.sink.as_ref() {
            continue;
        }
        let (inflow, outflow) = through(net, f, v);
        if inflow != outflow {
            out.push(FlowViolation::Conservation {
                node: v.clone(),
                inflow,
                outflow,
            });
        }
    }
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

/// (inflow, outflow) at `v`.
fn through(net: &FlowNetwork, f: &Flow, v: &NodeId) -> (Capacity, Capacity) {
    let mut inflow = 0;
    let mut outflow = 0;
    for (e, &fe) in net.edges.iter().zip(&f.values) {
        if &e.head == v {
            inflow += fe;
        }
        if &e.tail == v {
            outflow += fe;
        }
    }
    (inflow, outflow)
}

/// Value of a flow: net flow leaving the source.
///
/// Checked against the net flow entering the sink. Flows produced by
/// augmentation never use edges into the source, so this is also the plain
/// sum over edges out of the source.
pub fn flow_value(net: &FlowNetwork, f: &Flow) -> Result<Capacity, FlowError> {
    require_valid(net)?;
    check_flow(net, f).map_err(FlowError::InvalidFlow)?;
    Ok(value_unchecked(net, f))
}

pub(crate) fn value_unchecked(net: &FlowNetwork, f: &Flow) -> Capacity {
    let s = net.source.as_ref().expect("validated network has a source");
    let t = net.sink.as_ref().expect("validated network has a sink");
    let (s_in, s_out) = through(net, f, s);
    let (t_in, t_out) = through(net, f, t);
    let at_source = s_out - s_in;
    assert_eq!(at_source, t_in - t_out, "flow value differs at source and sink");
    at_source
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ArcKind {
    Forward,
    Backward,
}

/// An arc of a residual graph.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ResidualArc {
    pub tail: NodeId,
    pub head: NodeId,
    pub capacity: Capacity,
    pub kind: ArcKind,
    /// Index of the original edge in `FlowNetwork::edges`.
    pub origin: usize,
}

impl fmt::Display for ResidualArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{}:{}", self.tail, self.head, self.capacity)
    }
}

/// The residual graph of a flow, plus the indexing needed to search it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidualGraph {
    pub nodes: Vec<NodeId>,
    pub source: NodeId,
    pub sink: NodeId,
    /// Sorted by (tail, head).
    pub arcs: Vec<ResidualArc>,
    pub(crate) source_ix: usize,
    pub(crate) sink_ix: usize,
    /// Per tail index: (head index, arc index), ascending by head.
    pub(crate) adjacency: Vec<Vec<(usize, usize)>>,
}

impl ResidualGraph {
    pub fn arc(&self, tail: &NodeId, head: &NodeId) -> Option<&ResidualArc> {
        self.arcs
            .binary_search_by(|a| (&a.tail, &a.head).cmp(&(tail, head)))
            .ok()
            .map(|i| &self.arcs[i])
    }

    /// Forward and backward residual of original edge `origin` (absent = 0).
    pub fn residuals_of(&self, origin: usize) -> (Capacity, Capacity) {
        let mut fwd = 0;
        let mut bwd = 0;
        for a in self.arcs.iter().filter(|a| a.origin == origin) {
            match a.kind {
                ArcKind::Forward => fwd += a.capacity,
                ArcKind::Backward => bwd += a.capacity,
            }
        }
        (fwd, bwd)
    }

    /// Node set reachable from the source along residual arcs.
    pub fn reachable_from_source(&self) -> BTreeSet<NodeId> {
        let mut seen = vec![false; self.nodes.len()];
        seen[self.source_ix] = true;
        let mut stack = vec![self.source_ix];
        while let Some(u) = stack.pop() {
            for &(v, _) in &self.adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        self.nodes
            .iter()
            .zip(seen)
            .filter(|(_, s)| *s)
            .map(|(id, _)| id.clone())
            .collect()
    }

    pub fn has_augmenting_path(&self) -> bool {
        self.reachable_from_source().contains(&self.sink)
    }

    pub(crate) fn path_from_arc_indices(&self, arcs: &[usize]) -> Path {
        Path {
            arcs: arcs.iter().map(|&i| self.arcs[i].clone()).collect(),
        }
    }
}

/// Residual graph of `f`; arcs with zero residual capacity are omitted.
pub fn residual_graph(net: &FlowNetwork, f: &Flow) -> Result<ResidualGraph, FlowError> {
    require_valid(net)?;
    check_flow(net, f).map_err(FlowError::InvalidFlow)?;
    Ok(residual_unchecked(net, f))
}

pub(crate) fn residual_unchecked(net: &FlowNetwork, f: &Flow) -> ResidualGraph {
    let ix = net.indexer();
    let mut arcs = Vec::new();
    for (origin, (e, &fe)) in net.edges.iter().zip(&f.values).enumerate() {
        if e.capacity - fe > 0 {
            arcs.push(ResidualArc {
                tail: e.tail.clone(),
                head: e.head.clone(),
                capacity: e.capacity - fe,
                kind: ArcKind::Forward,
                origin,
            });
        }
        if fe > 0 {
            arcs.push(ResidualArc {
                tail: e.head.clone(),
                head: e.tail.clone(),
                capacity: fe,
                kind: ArcKind::Backward,
                origin,
            });
        }
    }
    build_residual(&ix, net, arcs)
}

fn build_residual(ix: &Indexer, net: &FlowNetwork, mut arcs: Vec<ResidualArc>) -> ResidualGraph {
    arcs.sort_by(|a, b| (&a.tail, &a.head).cmp(&(&b.tail, &b.head)));
    let mut adjacency = vec![Vec::new(); ix.len()];
    for (i, a) in arcs.iter().enumerate() {
        let u = ix.index(&a.tail).expect("arc tail is a node");
        let v = ix.index(&a.head).expect("arc head is a node");
        adjacency[u].push((v, i));
    }
    for adj in &mut adjacency {
        adj.sort();
    }
    let source = net.source.clone().expect("validated network has a source");
    let sink = net.sink.clone().expect("validated network has a sink");
    ResidualGraph {
        nodes: ix.ids.clone(),
        source_ix: ix.index(&source).expect("source is a node"),
        sink_ix: ix.index(&sink).expect("sink is a node"),
        source,
        sink,
        arcs,
        adjacency,
    }
}

/// A sequence of residual arcs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path {
    pub arcs: Vec<ResidualArc>,
}

impl Path {
    pub fn new(arcs: Vec<ResidualArc>) -> Self {
        Path { arcs }
    }

    /// Node sequence visited by the path.
    pub fn nodes(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.arcs.len() + 1);
        if let Some(first) = self.arcs.first() {
            out.push(first.tail.clone());
        }
        out.extend(self.arcs.iter().map(|a| a.head.clone()));
        out
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// Checks chaining, simplicity and the terminal nodes.
    pub fn check_shape(&self, source: &NodeId, sink: &NodeId) -> Result<(), FlowError> {
        let first = self.arcs.first().ok_or(FlowError::EmptyPath)?;
        if &first.tail != source {
            return Err(FlowError::NotFromSource);
        }
        for pair in self.arcs.windows(2) {
            if pair[0].head != pair[1].tail {
                return Err(FlowError::Broken(pair[0].head.clone(), pair[1].tail.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for n in self.nodes() {
            if !seen.insert(n.clone()) {
                return Err(FlowError::RepeatedNode(n));
            }
        }
        if &self.arcs.last().expect("nonempty").head != sink {
            return Err(FlowError::NotToSink);
        }
        Ok(())
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nodes: Vec<&str> = self
            .arcs
            .first()
            .map(|a| a.tail.as_str())
            .into_iter()
            .chain(self.arcs.iter().map(|a| a.head.as_str()))
            .collect();
        f.write_str(&nodes.join("→"))
    }
}

/// Bottleneck of a path together with the arcs that attain it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Bottleneck {
    pub value: Capacity,
    pub arcs: Vec<ResidualArc>,
}

pub fn bottleneck(path: &Path) -> Result<Bottleneck, FlowError> {
    let value = path.arcs.iter().map(|a| a.capacity).min().ok_or(FlowError::EmptyPath)?;
    let arcs = path.arcs.iter().filter(|a| a.capacity == value).cloned().collect();
    Ok(Bottleneck { value, arcs })
}

/// Re-reads `path` against the residual graph of `f`: every arc must be
/// present there, and capacities are taken from the current residual.
pub fn refresh_path(net: &FlowNetwork, f: &Flow, path: &Path) -> Result<Path, FlowError> {
    let residual = residual_graph(net, f)?;
    refresh_in(&residual, path)
}

fn refresh_in(residual: &ResidualGraph, path: &Path) -> Result<Path, FlowError> {
    let arcs = path
        .arcs
        .iter()
        .map(|a| {
            residual
                .arc(&a.tail, &a.head)
                .cloned()
                .ok_or_else(|| FlowError::ArcNotInResidual(a.tail.clone(), a.head.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let path = Path { arcs };
    path.check_shape(&residual.source, &residual.sink)?;
    Ok(path)
}

/// Pushes `amount` units along `path`: forward arcs add to their edge,
/// backward arcs subtract.
pub fn augment(net: &FlowNetwork, f: &Flow, path: &Path, amount: Capacity) -> Result<Flow, FlowError> {
    if amount <= 0 {
        return Err(FlowError::AmountNotPositive(amount));
    }
    let path = refresh_path(net, f, path)?;
    let b = bottleneck(&path)?.value;
    if amount > b {
        return Err(FlowError::AmountExceedsBottleneck { amount, bottleneck: b });
    }
    Ok(augment_unchecked(f, &path, amount))
}

pub(crate) fn augment_unchecked(f: &Flow, path: &Path, amount: Capacity) -> Flow {
    let mut next = f.clone();
    for a in &path.arcs {
        match a.kind {
            ArcKind::Forward => next.values[a.origin] += amount,
            ArcKind::Backward => next.values[a.origin] -= amount,
        }
    }
    next
}
