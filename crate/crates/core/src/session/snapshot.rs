use serde::{Deserialize, Serialize};

use super::action::ArcRef;
use super::{Phase, SessionState, Stage};
use crate::flow::{residual_unchecked, value_unchecked, ArcKind};
use crate::network::{Capacity, NetworkViolation, NodeId};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct NodeView {
    pub id: NodeId,
    pub x: Option<f64>,
    pub y: Option<f64>,
    pub pinned: bool,
}

/// Original edge with its applied flow, rendered as `flow/capacity`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EdgeView {
    pub tail: NodeId,
    pub head: NodeId,
    pub flow: Capacity,
    pub capacity: Capacity,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ArcView {
    pub tail: NodeId,
    pub head: NodeId,
    pub capacity: Capacity,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<ArcKind>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct HistoryEntry {
    pub path: Vec<NodeId>,
    pub amount: Capacity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StageTag {
    GraphCreation,
    Iterative,
    Finalized,
}

/// Everything a client needs to render a session; no client state required.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Snapshot {
    pub stage: StageTag,
    pub phase: Option<Phase>,
    pub nodes: Vec<NodeView>,
    pub source: Option<NodeId>,
    pub sink: Option<NodeId>,
    pub edges: Vec<EdgeView>,
    /// Problems that currently block confirming the graph.
    pub violations: Vec<NetworkViolation>,
    pub flow_value: Option<Capacity>,
    pub residual: Vec<ArcView>,
    pub selected_arcs: Vec<ArcRef>,
    pub pending_path: Option<Vec<NodeId>>,
    pub amount_draft: Option<Capacity>,
    pub pending_amount: Option<Capacity>,
    pub edit_buffer: Vec<ArcView>,
    pub history: Vec<HistoryEntry>,
    pub cut_selection: Vec<NodeId>,
    pub max_flow_confirmed: bool,
}

impl Snapshot {
    pub(super) fn of(state: &SessionState) -> Snapshot {
        let mut snap = Snapshot::without_history(state);
        snap.history = state
            .history
            .iter()
            .map(|h| HistoryEntry {
                path: h.path.nodes(),
                amount: h.amount,
            })
            .collect();
        snap
    }

    /// Everything but the history, which grows with the session; used for
    /// cheap change detection.
    pub(super) fn without_history(state: &SessionState) -> Snapshot {
        let net = &state.net;
        let (stage, phase) = match state.stage {
            Stage::GraphCreation => (StageTag::GraphCreation, None),
            Stage::Iterative(p) => (StageTag::Iterative, Some(p)),
            Stage::Finalized => (StageTag::Finalized, None),
        };
        let algorithmic = stage != StageTag::GraphCreation;
        let residual = if algorithmic {
            residual_unchecked(net, &state.flow)
                .arcs
                .into_iter()
                .map(|a| ArcView {
                    tail: a.tail,
                    head: a.head,
                    capacity: a.capacity,
                    kind: Some(a.kind),
                })
                .collect()
        } else {
            Vec::new()
        };
        Snapshot {
            stage,
            phase,
            nodes: net
                .nodes
                .iter()
                .map(|id| {
                    let p = net.positions.get(id);
                    NodeView {
                        id: id.clone(),
                        x: p.map(|p| p.x),
                        y: p.map(|p| p.y),
                        pinned: state.pinned.contains(id),
                    }
                })
                .collect(),
            source: net.source.clone(),
            sink: net.sink.clone(),
            edges: net
                .edges
                .iter()
                .zip(&state.flow.values)
                .map(|(e, &f)| EdgeView {
                    tail: e.tail.clone(),
                    head: e.head.clone(),
                    flow: f,
                    capacity: e.capacity,
                    label: format!("{f}/{}", e.capacity),
                })
                .collect(),
            violations: if algorithmic { Vec::new() } else { net.violations() },
            flow_value: algorithmic.then(|| value_unchecked(net, &state.flow)),
            residual,
            selected_arcs: state.selected_arcs.clone(),
            pending_path: state.pending_path.as_ref().map(|p| p.nodes()),
            amount_draft: state.amount_draft,
            pending_amount: state.pending_amount,
            edit_buffer: state
                .edit_buffer
                .iter()
                .map(|(arc, &capacity)| ArcView {
                    tail: arc.tail.clone(),
                    head: arc.head.clone(),
                    capacity,
                    kind: None,
                })
                .collect(),
            history: Vec::new(),
            cut_selection: state.cut_selection.iter().cloned().collect(),
            max_flow_confirmed: state.max_flow_confirmed,
        }
    }
}
