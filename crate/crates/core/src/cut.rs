//! Cut capacities, the smallest minimum cut, and checking of proposed cuts.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flow::{residual_unchecked, Flow, FlowError};
use crate::network::{Capacity, FlowNetwork, NetworkViolation, NodeId};
use crate::strategy::{solve, Strategy};

/// An s-t cut given by its source side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Cut {
    pub s_side: BTreeSet<NodeId>,
    pub capacity: Capacity,
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side: Vec<&str> = self.s_side.iter().map(NodeId::as_str).collect();
        write!(f, "S = {{{}}}, capacity {}", side.join(", "), self.capacity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CutError {
    #[error("invalid network: {0:?}")]
    InvalidNetwork(Vec<NetworkViolation>),
    #[error("cut side must contain the source")]
    SourceOutside,
    #[error("cut side must not contain the sink")]
    SinkInside,
    #[error("selection is empty")]
    EmptySelection,
    #[error("selection contains every node")]
    WholeNodeSet,
    #[error("{0} is not a node of the network")]
    UnknownNode(NodeId),
}

impl From<FlowError> for CutError {
    fn from(e: FlowError) -> Self {
        match e {
            FlowError::InvalidNetwork(v) => CutError::InvalidNetwork(v),
            other => unreachable!("max-flow computation failed on a valid network: {other}"),
        }
    }
}

/// Capacity of the edges leaving `s_side`.
pub fn cut_capacity(net: &FlowNetwork, s_side: &BTreeSet<NodeId>) -> Result<Capacity, CutError> {
    let s = net.source.as_ref().ok_or(CutError::SourceOutside)?;
    let t = net.sink.as_ref().ok_or(CutError::SinkInside)?;
    if !s_side.contains(s) {
        return Err(CutError::SourceOutside);
    }
    if s_side.contains(t) {
        return Err(CutError::SinkInside);
    }
    if let Some(stray) = s_side.iter().find(|v| !net.nodes.contains(*v)) {
        return Err(CutError::UnknownNode(stray.clone()));
    }
    Ok(crossing_capacity(net, s_side))
}

fn crossing_capacity(net: &FlowNetwork, s_side: &BTreeSet<NodeId>) -> Capacity {
    net.edges
        .iter()
        .filter(|e| s_side.contains(&e.tail) && !s_side.contains(&e.head))
        .map(|e| e.capacity)
        .sum()
}

/// A maximum flow and the residual-reachable source side it induces.
fn max_flow_and_cut(net: &FlowNetwork) -> Result<(Flow, Cut), CutError> {
    let solved = solve(net, Strategy::Shortest)?;
    let s_side = residual_unchecked(net, &solved.max_flow).reachable_from_source();
    let capacity = crossing_capacity(net, &s_side);
    debug_assert_eq!(capacity, solved.value);
    Ok((solved.max_flow, Cut { s_side, capacity }))
}

/// The minimum cut with the smallest source side: the nodes reachable from
/// the source in the residual graph of a maximum flow.
pub fn find_min_cut(net: &FlowNetwork) -> Result<Cut, CutError> {
    max_flow_and_cut(net).map(|(_, cut)| cut)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CutInterpretation {
    SSide,
    TSide,
    Uninterpretable,
}

/// Why a proposed cut is not minimum, or how it was read.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "finding", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum CutFinding {
    /// Selection contains both terminals or neither.
    Uninterpretable {
        has_source: bool,
        has_sink: bool,
    },
    CapacityGap {
        proposed: Capacity,
        max_flow: Capacity,
    },
    /// An edge from the source side to the sink side.
    CrossingEdge {
        tail: NodeId,
        head: NodeId,
        capacity: Capacity,
    },
    /// A crossing edge a maximum flow does not saturate.
    UnsaturatedCrossingEdge {
        tail: NodeId,
        head: NodeId,
        flow: Capacity,
        capacity: Capacity,
    },
    /// An edge from the sink side back into the source side that carries
    /// flow in a maximum flow.
    BackwardEdgeWithFlow {
        tail: NodeId,
        head: NodeId,
        flow: Capacity,
    },
}

impl fmt::Display for CutFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutFinding::Uninterpretable { has_source, has_sink } => {
                let which = if *has_source && *has_sink { "both" } else { "neither" };
                write!(f, "selection contains {which} of source and sink")
            }
            CutFinding::CapacityGap { proposed, max_flow } => write!(
                f,
                "cut capacity {proposed} is larger than the maximum flow value {max_flow}"
            ),
            CutFinding::CrossingEdge { tail, head, capacity } => {
                write!(f, "crossing edge {tail}→{head}:{capacity}")
            }
            CutFinding::UnsaturatedCrossingEdge {
                tail,
                head,
                flow,
                capacity,
            } => write!(
                f,
                "crossing edge {tail}→{head} is not saturated by a maximum flow ({flow}/{capacity})"
            ),
            CutFinding::BackwardEdgeWithFlow { tail, head, flow } => write!(
                f,
                "edge {tail}→{head} into the selected side carries flow {flow} in a maximum flow"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CutVerdict {
    pub interpretation: CutInterpretation,
    pub valid: bool,
    /// The source side the selection was read as, when interpretable.
    pub s_side: Option<BTreeSet<NodeId>>,
    pub proposed_capacity: Option<Capacity>,
    pub max_flow_value: Capacity,
    pub diagnostics: Vec<CutFinding>,
}

/// Judges a node selection as the s-side or t-side of a minimum cut.
///
/// The maximum flow used for the verdict and the witnesses is computed here
/// from the network alone.
pub fn validate_cut(net: &FlowNetwork, selected: &BTreeSet<NodeId>) -> Result<CutVerdict, CutError> {
    net.validate().map_err(CutError::InvalidNetwork)?;
    if selected.is_empty() {
        return Err(CutError::EmptySelection);
    }
    if let Some(stray) = selected.iter().find(|v| !net.nodes.contains(*v)) {
        return Err(CutError::UnknownNode(stray.clone()));
    }
    if selected.len() == net.nodes.len() {
        return Err(CutError::WholeNodeSet);
    }
    let (max_flow, min_cut) = max_flow_and_cut(net)?;
    let s = net.source.as_ref().expect("validated");
    let t = net.sink.as_ref().expect("validated");
    let has_source = selected.contains(s);
    let has_sink = selected.contains(t);

    let (interpretation, s_side) = match (has_source, has_sink) {
        (true, false) => (CutInterpretation::SSide, selected.clone()),
        (false, true) => (
            CutInterpretation::TSide,
            net.nodes.difference(selected).cloned().collect(),
        ),
        _ => {
            return Ok(CutVerdict {
                interpretation: CutInterpretation::Uninterpretable,
                valid: false,
                s_side: None,
                proposed_capacity: None,
                max_flow_value: min_cut.capacity,
                diagnostics: vec![CutFinding::Uninterpretable { has_source, has_sink }],
            })
        }
    };

    let proposed = crossing_capacity(net, &s_side);
    let valid = proposed == min_cut.capacity;
    let mut diagnostics = Vec::new();
    if !valid {
        diagnostics.push(CutFinding::CapacityGap {
            proposed,
            max_flow: min_cut.capacity,
        });
        for e in &net.edges {
            if s_side.contains(&e.tail) && !s_side.contains(&e.head) {
                diagnostics.push(CutFinding::CrossingEdge {
                    tail: e.tail.clone(),
                    head: e.head.clone(),
                    capacity: e.capacity,
                });
            }
        }
        for (e, &fe) in net.edges.iter().zip(&max_flow.values) {
            let tail_in = s_side.contains(&e.tail);
            let head_in = s_side.contains(&e.head);
            if tail_in && !head_in && fe < e.capacity {
                diagnostics.push(CutFinding::UnsaturatedCrossingEdge {
                    tail: e.tail.clone(),
                    head: e.head.clone(),
                    flow: fe,
                    capacity: e.capacity,
                });
            } else if !tail_in && head_in && fe > 0 {
                diagnostics.push(CutFinding::BackwardEdgeWithFlow {
                    tail: e.tail.clone(),
                    head: e.head.clone(),
                    flow: fe,
                });
            }
        }
    }
    Ok(CutVerdict {
        interpretation,
        valid,
        s_side: Some(s_side),
        proposed_capacity: Some(proposed),
        max_flow_value: min_cut.capacity,
        diagnostics,
    })
}
