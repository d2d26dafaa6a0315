use std::fmt;

use serde::{Deserialize, Serialize};

use crate::layout::LayoutKind;
use crate::network::{Capacity, NodeId};
use crate::strategy::StrategyName;

/// Reference to a residual arc by its endpoints. Unambiguous because
/// networks never contain anti-parallel edges.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ArcRef {
    pub tail: NodeId,
    pub head: NodeId,
}

impl ArcRef {
    pub fn new(tail: NodeId, head: NodeId) -> Self {
        ArcRef { tail, head }
    }
}

impl fmt::Display for ArcRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}→{}", self.tail, self.head)
    }
}

/// Everything a user (or a script) can do to a session.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum Action {
    // Graph creation.
    AddNode {
        id: NodeId,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        x: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        y: Option<f64>,
    },
    DeleteNode {
        id: NodeId,
    },
    AddEdge {
        tail: NodeId,
        head: NodeId,
        capacity: Capacity,
    },
    DeleteEdge {
        tail: NodeId,
        head: NodeId,
    },
    SetCapacity {
        tail: NodeId,
        head: NodeId,
        capacity: Capacity,
    },
    SetSource {
        id: NodeId,
    },
    SetSink {
        id: NodeId,
    },
    ImportGraph {
        text: String,
    },
    ApplyLayout {
        layout: LayoutKind,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        width: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        height: Option<f64>,
        /// Also move nodes whose position was set by hand or by a `pos` line.
        #[serde(default)]
        unpin: bool,
    },
    ConfirmGraph,

    // Available in every stage.
    ExportGraph,
    SetPosition {
        id: NodeId,
        x: f64,
        y: f64,
    },

    // Select path.
    SelectArc {
        tail: NodeId,
        head: NodeId,
    },
    DeselectArc {
        tail: NodeId,
        head: NodeId,
    },
    ValidatePath,
    AutoPath {
        strategy: StrategyName,
    },

    // Choose flow amount.
    HighlightBottleneck,
    SetAmount {
        amount: Capacity,
    },
    ConfirmAmount {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        amount: Option<Capacity>,
    },

    // Update residual graph.
    EditResidualArc {
        tail: NodeId,
        head: NodeId,
        capacity: Capacity,
    },
    ValidateResidual,
    AutoResidual,

    // Finalization (ConfirmMaxFlow is issued from select path).
    ConfirmMaxFlow {
        value: Capacity,
    },
    ToggleCutNode {
        id: NodeId,
    },
    ValidateCut,
    FindMinCut,
}

impl Action {
    /// Wire tag of the action.
    pub fn name(&self) -> &'static str {
        match self {
            Action::AddNode { .. } => "add_node",
            Action::DeleteNode { .. } => "delete_node",
            Action::AddEdge { .. } => "add_edge",
            Action::DeleteEdge { .. } => "delete_edge",
            Action::SetCapacity { .. } => "set_capacity",
            Action::SetSource { .. } => "set_source",
            Action::SetSink { .. } => "set_sink",
            Action::ImportGraph { .. } => "import_graph",
            Action::ApplyLayout { .. } => "apply_layout",
            Action::ConfirmGraph => "confirm_graph",
            Action::ExportGraph => "export_graph",
            Action::SetPosition { .. } => "set_position",
            Action::SelectArc { .. } => "select_arc",
            Action::DeselectArc { .. } => "deselect_arc",
            Action::ValidatePath => "validate_path",
            Action::AutoPath { .. } => "auto_path",
            Action::HighlightBottleneck => "highlight_bottleneck",
            Action::SetAmount { .. } => "set_amount",
            Action::ConfirmAmount { .. } => "confirm_amount",
            Action::EditResidualArc { .. } => "edit_residual_arc",
            Action::ValidateResidual => "validate_residual",
            Action::AutoResidual => "auto_residual",
            Action::ConfirmMaxFlow { .. } => "confirm_max_flow",
            Action::ToggleCutNode { .. } => "toggle_cut_node",
            Action::ValidateCut => "validate_cut",
            Action::FindMinCut => "find_min_cut",
        }
    }
}
