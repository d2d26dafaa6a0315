use std::fmt;

use serde::{Deserialize, Serialize};

use super::action::ArcRef;
use crate::cut::{Cut, CutVerdict};
use crate::edgelist::ParseError;
use crate::network::{Capacity, NetworkViolation, NodeId};

/// A structured message about one step. Rejections always carry at least
/// one; accepted steps may carry results (a found path, an export, ...).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum Finding {
    WrongStage {
        action: String,
        stage: String,
    },

    NodeExists {
        id: NodeId,
    },
    UnknownNode {
        id: NodeId,
    },
    EdgeExists {
        tail: NodeId,
        head: NodeId,
    },
    UnknownEdge {
        tail: NodeId,
        head: NodeId,
    },
    Network {
        violation: NetworkViolation,
    },
    SinkUnreachable,
    Parse {
        error: ParseError,
    },
    Layout {
        message: String,
    },

    UnknownArc {
        tail: NodeId,
        head: NodeId,
    },
    ArcAlreadySelected {
        tail: NodeId,
        head: NodeId,
    },
    ArcNotSelected {
        tail: NodeId,
        head: NodeId,
    },
    EmptySelection,
    PathMustStartAtSource,
    PathMustEndAtSink,
    PathDisconnected {
        from: NodeId,
        to: NodeId,
    },
    RedundantArcs {
        arcs: Vec<ArcRef>,
    },
    NoAugmentingPath,

    NoAmount,
    AmountNotPositive {
        amount: Capacity,
    },
    AmountExceedsBottleneck {
        amount: Capacity,
        bottleneck: Capacity,
    },

    NegativeResidual {
        tail: NodeId,
        head: NodeId,
        capacity: Capacity,
    },
    WrongResidualCapacity {
        tail: NodeId,
        head: NodeId,
        entered: Capacity,
    },
    MissingResidualArc {
        tail: NodeId,
        head: NodeId,
    },
    ExtraneousResidualArc {
        tail: NodeId,
        head: NodeId,
        capacity: Capacity,
    },

    AugmentingPathExists,
    IncorrectValue {
        entered: Capacity,
    },
    CutProblem {
        message: String,
    },

    // Results of accepted steps.
    GraphConfirmed,
    PathAccepted {
        path: Vec<NodeId>,
    },
    PathFound {
        path: Vec<NodeId>,
    },
    Bottleneck {
        value: Capacity,
        arcs: Vec<ArcRef>,
    },
    AmountAccepted {
        amount: Capacity,
    },
    AugmentationCommitted {
        path: Vec<NodeId>,
        amount: Capacity,
        value: Capacity,
    },
    MaxFlowConfirmed {
        value: Capacity,
    },
    CutVerdict {
        verdict: CutVerdict,
    },
    MinCut {
        cut: Cut,
    },
    Exported {
        text: String,
    },
}

impl Finding {
    /// Whether this finding explains a rejected step. An invalid cut verdict
    /// counts; every other result variant does not.
    pub fn is_rejection(&self) -> bool {
        use Finding::*;
        match self {
            CutVerdict { verdict } => !verdict.valid,
            GraphConfirmed
            | PathAccepted { .. }
            | PathFound { .. }
            | Bottleneck { .. }
            | AmountAccepted { .. }
            | AugmentationCommitted { .. }
            | MaxFlowConfirmed { .. }
            | MinCut { .. }
            | Exported { .. } => false,
            _ => true,
        }
    }
}

fn arrow(path: &[NodeId]) -> String {
    path.iter().map(NodeId::as_str).collect::<Vec<_>>().join("→")
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Finding::*;
        match self {
            WrongStage { action, stage } => write!(f, "action not valid in {stage} ({action})"),
            NodeExists { id } => write!(f, "node {id} already exists"),
            UnknownNode { id } => write!(f, "no node {id}"),
            EdgeExists { tail, head } => write!(f, "edge {tail}→{head} already exists"),
            UnknownEdge { tail, head } => write!(f, "no edge {tail}→{head}"),
            Network { violation } => write!(f, "{violation}"),
            SinkUnreachable => f.write_str("sink is not reachable from the source"),
            Parse { error } => write!(f, "{error}"),
            Layout { message } => write!(f, "layout failed: {message}"),
            UnknownArc { tail, head } => write!(f, "{tail}→{head} is not an arc of the residual graph"),
            ArcAlreadySelected { tail, head } => write!(f, "{tail}→{head} is already selected"),
            ArcNotSelected { tail, head } => write!(f, "{tail}→{head} is not selected"),
            EmptySelection => f.write_str("no arcs selected"),
            PathMustStartAtSource => f.write_str("path must start at the source"),
            PathMustEndAtSink => f.write_str("path must end at the sink"),
            PathDisconnected { from, to } => write!(f, "path is disconnected between {from} and {to}"),
            RedundantArcs { arcs } => write!(
                f,
                "redundant edges not on the path: {}",
                arcs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            ),
            NoAugmentingPath => f.write_str("no augmenting path exists"),
            NoAmount => f.write_str("no flow amount entered"),
            AmountNotPositive { amount } => write!(f, "flow amount must be positive, got {amount}"),
            AmountExceedsBottleneck { amount, bottleneck } => write!(
                f,
                "flow amount {amount} is greater than the bottleneck residual capacity {bottleneck}"
            ),
            NegativeResidual { tail, head, capacity } => {
                write!(f, "residual capacity of {tail}→{head} cannot be negative ({capacity})")
            }
            WrongResidualCapacity { tail, head, entered } => {
                write!(f, "{tail}→{head} has the wrong residual capacity ({entered})")
            }
            MissingResidualArc { tail, head } => write!(f, "arc {tail}→{head} is missing"),
            ExtraneousResidualArc { tail, head, capacity } => {
                write!(f, "arc {tail}→{head}:{capacity} should not be in the residual graph")
            }
            AugmentingPathExists => f.write_str("an augmenting path still exists; continue finding augmenting paths"),
            IncorrectValue { entered } => write!(f, "value incorrect ({entered})"),
            CutProblem { message } => f.write_str(message),
            GraphConfirmed => f.write_str("graph confirmed"),
            PathAccepted { path } => write!(f, "path {} accepted", arrow(path)),
            PathFound { path } => write!(f, "found path {}", arrow(path)),
            Bottleneck { value, arcs } => write!(
                f,
                "bottleneck {value} at {}",
                arcs.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            ),
            AmountAccepted { amount } => write!(f, "flow amount {amount} accepted"),
            AugmentationCommitted { path, amount, value } => {
                write!(f, "pushed {amount} along {}; flow value is now {value}", arrow(path))
            }
            MaxFlowConfirmed { value } => write!(f, "maximum flow {value} confirmed"),
            CutVerdict { verdict } => {
                if verdict.valid {
                    f.write_str("selection is a minimum cut")?;
                } else {
                    f.write_str("selection is not a minimum cut")?;
                }
                for d in &verdict.diagnostics {
                    write!(f, "; {d}")?;
                }
                Ok(())
            }
            MinCut { cut } => write!(f, "{cut}"),
            Exported { .. } => f.write_str("graph exported"),
        }
    }
}

/// Outcome of one action.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct StepFeedback {
    pub accepted: bool,
    pub findings: Vec<Finding>,
    /// Top-level snapshot fields that changed.
    pub changed: Vec<String>,
}

impl StepFeedback {
    pub fn messages(&self) -> Vec<String> {
        self.findings.iter().map(ToString::to_string).collect()
    }
}
