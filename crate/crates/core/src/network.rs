//! Flow network model and structural validation.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Edge capacities and flow amounts. Signed so that a negative capacity
/// coming off the wire can be represented and reported rather than silently
/// wrapped.
pub type Capacity = i64;

/// Identifier of a node: a nonempty token without whitespace that does not
/// start with `#` (which would read as a comment in an edgelist).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct NodeId(String);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NodeIdError {
    #[error("node id must not be empty")]
    Empty,
    #[error("node id {0:?} contains whitespace")]
    Whitespace(String),
    #[error("node id {0:?} starts with '#'")]
    CommentPrefix(String),
}

impl NodeId {
    pub fn new(token: impl Into<String>) -> Result<Self, NodeIdError> {
        let token = token.into();
        if token.is_empty() {
            return Err(NodeIdError::Empty);
        }
        if token.chars().any(char::is_whitespace) {
            return Err(NodeIdError::Whitespace(token));
        }
        if token.starts_with('#') {
            return Err(NodeIdError::CommentPrefix(token));
        }
        Ok(NodeId(token))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for NodeId {
    type Error = NodeIdError;
    fn try_from(value: String) -> Result<Self, Self::Error> {
        NodeId::new(value)
    }
}

impl TryFrom<&str> for NodeId {
    type Error = NodeIdError;
    fn try_from(value: &str) -> Result<Self, Self::Error> {
        NodeId::new(value)
    }
}

impl From<NodeId> for String {
    fn from(id: NodeId) -> String {
        id.0
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Shorthand for building ids from literals in tests and fixtures.
///
/// Panics on an invalid token.
pub fn node(token: &str) -> NodeId {
    NodeId::new(token).expect("invalid node id literal")
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Position {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Edge {
    pub tail: NodeId,
    pub head: NodeId,
    pub capacity: Capacity,
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{}", self.tail, self.head)
    }
}

/// A directed graph with integer capacities and a designated source and sink.
///
/// Source and sink are optional so that a network can be assembled
/// incrementally; every algorithm requires [`FlowNetwork::validate`] to pass.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FlowNetwork {
    pub nodes: BTreeSet<NodeId>,
    pub edges: Vec<Edge>,
    pub source: Option<NodeId>,
    pub sink: Option<NodeId>,
    #[serde(default)]
    pub positions: BTreeMap<NodeId, Position>,
}

/// A structural problem with a [`FlowNetwork`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Error)]
#[serde(tag = "violation", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum NetworkViolation {
    #[error("duplicate edge {tail}→{head}")]
    DuplicateEdge { tail: NodeId, head: NodeId },
    #[error("anti-parallel pair ({a},{b})")]
    AntiParallelPair { a: NodeId, b: NodeId },
    #[error("self-loop at {node}")]
    SelfLoop { node: NodeId },
    #[error("dangling endpoint {node} on edge {tail}→{head}")]
    DanglingEndpoint { node: NodeId, tail: NodeId, head: NodeId },
    #[error("missing source")]
    MissingSource,
    #[error("missing sink")]
    MissingSink,
    #[error("source {node} is not a node of the network")]
    UnknownSource { node: NodeId },
    #[error("sink {node} is not a node of the network")]
    UnknownSink { node: NodeId },
    #[error("negative capacity {capacity} on {tail}→{head}")]
    NegativeCapacity {
        tail: NodeId,
        head: NodeId,
        capacity: Capacity,
    },
    #[error("source = sink ({node})")]
    SourceIsSink { node: NodeId },
}

impl FlowNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a network from `(tail, head, capacity)` triples, declaring every
    /// mentioned node. Does not validate.
    pub fn from_edges<'a>(
        source: &str,
        sink: &str,
        edges: impl IntoIterator<Item = (&'a str, &'a str, Capacity)>,
    ) -> Self {
        let mut net = FlowNetwork::new();
        net.nodes.insert(node(source));
        net.nodes.insert(node(sink));
        for (u, v, c) in edges {
            net.nodes.insert(node(u));
            net.nodes.insert(node(v));
            net.edges.push(Edge {
                tail: node(u),
                head: node(v),
                capacity: c,
            });
        }
        net.source = Some(node(source));
        net.sink = Some(node(sink));
        net
    }

    pub fn edge_index(&self, tail: &NodeId, head: &NodeId) -> Option<usize> {
        self.edges.iter().position(|e| &e.tail == tail && &e.head == head)
    }

    pub fn edge(&self, tail: &NodeId, head: &NodeId) -> Option<&Edge> {
        self.edge_index(tail, head).map(|i| &self.edges[i])
    }

    /// Every structural violation, in a stable order; empty when valid.
    pub fn violations(&self) -> Vec<NetworkViolation> {
        let mut out = Vec::new();
        match &self.source {
            None => out.push(NetworkViolation::MissingSource),
            Some(s) if !self.nodes.contains(s) => out.push(NetworkViolation::UnknownSource { node: s.clone() }),
            _ => {}
        }
        match &self.sink {
            None => out.push(NetworkViolation::MissingSink),
            Some(t) if !self.nodes.contains(t) => out.push(NetworkViolation::UnknownSink { node: t.clone() }),
            _ => {}
        }
        if let (Some(s), Some(t)) = (&self.source, &self.sink) {
            if s == t {
                out.push(NetworkViolation::SourceIsSink { node: s.clone() });
            }
        }

        let mut seen: HashSet<(&NodeId, &NodeId)> = HashSet::new();
        let mut reported_pairs: HashSet<(&NodeId, &NodeId)> = HashSet::new();
        for e in &self.edges {
            for endpoint in [&e.tail, &e.head] {
                if !self.nodes.contains(endpoint) {
                    out.push(NetworkViolation::DanglingEndpoint {
                        node: endpoint.clone(),
                        tail: e.tail.clone(),
                        head: e.head.clone(),
                    });
                }
            }
            if e.tail == e.head {
                out.push(NetworkViolation::SelfLoop { node: e.tail.clone() });
            }
            if e.capacity < 0 {
                out.push(NetworkViolation::NegativeCapacity {
                    tail: e.tail.clone(),
                    head: e.head.clone(),
                    capacity: e.capacity,
                });
            }
            if !seen.insert((&e.tail, &e.head)) {
                out.push(NetworkViolation::DuplicateEdge {
                    tail: e.tail.clone(),
                    head: e.head.clone(),
                });
            } else if e.tail != e.head && seen.contains(&(&e.head, &e.tail)) {
                let pair = if e.tail < e.head {
                    (&e.tail, &e.head)
                } else {
                    (&e.head, &e.tail)
                };
                if reported_pairs.insert(pair) {
                    out.push(NetworkViolation::AntiParallelPair {
                        a: pair.0.clone(),
                        b: pair.1.clone(),
                    });
                }
            }
        }
        out
    }

    pub fn validate(&self) -> Result<(), Vec<NetworkViolation>> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(v)
        }
    }

    /// Whether the sink can be reached from the source along original edges
    /// (capacities ignored). False when either terminal is missing.
    pub fn sink_reachable(&self) -> bool {
        let (Some(s), Some(t)) = (&self.source, &self.sink) else {
            return false;
        };
        let mut seen = BTreeSet::from([s]);
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            if u == t {
                return true;
            }
            for e in self.edges.iter().filter(|e| &e.tail == u) {
                if seen.insert(&e.head) {
                    stack.push(&e.head);
                }
            }
        }
        false
    }

    /// Node list in ascending id order; index positions are the dense
    /// indices used by the algorithms.
    /// Copy with edges sorted by (tail, head), the order used by edgelist
    /// serialization.
    pub fn canonical(&self) -> FlowNetwork {
        let mut net = self.clone();
        net.edges.sort_by(|a, b| (&a.tail, &a.head).cmp(&(&b.tail, &b.head)));
        net
    }

    pub(crate) fn indexer(&self) -> Indexer {
        Indexer::new(self.nodes.iter().cloned().collect())
    }
}

/// Dense indexing of node ids; index order is ascending `NodeId` order.
#[derive(Debug, Clone)]
pub(crate) struct Indexer {
    pub ids: Vec<NodeId>,
    lookup: BTreeMap<NodeId, usize>,
}

impl Indexer {
    pub fn new(ids: Vec<NodeId>) -> Self {
        let lookup = ids.iter().enumerate().map(|(i, id)| (id.clone(), i)).collect();
        Indexer { ids, lookup }
    }

    pub fn index(&self, id: &NodeId) -> Option<usize> {
        self.lookup.get(id).copied()
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }
}

/// Structural check of a network; `Ok` iff every invariant holds.
pub fn validate_network(net: &FlowNetwork) -> Result<(), Vec<NetworkViolation>> {
    net.validate()
}
