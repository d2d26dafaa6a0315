//! The interactive tutoring state machine.
//!
//! A session moves through three stages: graph creation, the iterative
//! algorithm (select path, choose amount, update residual graph, repeated),
//! and finalization. Every [`Action`] is checked against the current stage
//! and phase and against the algorithm's ground truth; a rejected action
//! leaves the state untouched and explains itself through [`Finding`]s.

mod action;
mod feedback;
mod snapshot;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

pub use action::{Action, ArcRef};
pub use feedback::{Finding, StepFeedback};
pub use snapshot::{ArcView, EdgeView, HistoryEntry, NodeView, Snapshot, StageTag};

use crate::cut::{find_min_cut, validate_cut};
use crate::edgelist::{parse_edgelist_draft, serialize_edgelist};
use crate::flow::{
    augment_unchecked, bottleneck, check_flow, residual_unchecked, value_unchecked, Flow, Path, ResidualArc,
    ResidualGraph,
};
use crate::layout::{layered_layout, spring_layout, LayoutKind};
use crate::network::{Capacity, Edge, FlowNetwork, NetworkViolation, NodeId, Position};
use crate::strategy::{find_path, replay, Augmentation};

pub const DEFAULT_LAYOUT_WIDTH: f64 = 800.0;
pub const DEFAULT_LAYOUT_HEIGHT: f64 = 600.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    SelectPath,
    ChooseAmount,
    UpdateResidual,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "stage", content = "phase", rename_all = "snake_case")]
pub enum Stage {
    GraphCreation,
    Iterative(Phase),
    Finalized,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::GraphCreation => "GraphCreation",
            Stage::Iterative(Phase::SelectPath) => "SelectPath",
            Stage::Iterative(Phase::ChooseAmount) => "ChooseAmount",
            Stage::Iterative(Phase::UpdateResidual) => "UpdateResidual",
            Stage::Finalized => "Finalized",
        })
    }
}

impl Stage {
    /// Whether a session may move from `self` to `next` in one step.
    pub fn can_move_to(self, next: Stage) -> bool {
        use Phase::*;
        use Stage::*;
        self == next
            || matches!(
                (self, next),
                (GraphCreation, Iterative(SelectPath))
                    | (Iterative(SelectPath), Iterative(ChooseAmount))
                    | (Iterative(ChooseAmount), Iterative(SelectPath))
                    | (Iterative(ChooseAmount), Iterative(UpdateResidual))
                    | (Iterative(UpdateResidual), Iterative(SelectPath))
                    | (Iterative(SelectPath), Finalized)
            )
    }
}

/// Complete state of one tutoring session.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionState {
    pub stage: Stage,
    pub net: FlowNetwork,
    pub flow: Flow,
    pub selected_arcs: Vec<ArcRef>,
    pub pending_path: Option<Path>,
    pub amount_draft: Option<Capacity>,
    pub pending_amount: Option<Capacity>,
    pub edit_buffer: BTreeMap<ArcRef, Capacity>,
    /// Committed augmentations. Shared so that cloning a long session for
    /// a transactional step stays cheap.
    pub history: Vec<Arc<Augmentation>>,
    pub pinned: BTreeSet<NodeId>,
    pub cut_selection: BTreeSet<NodeId>,
    pub max_flow_confirmed: bool,
    pub seed: u64,
    rng: ChaCha8Rng,
}

impl Default for SessionState {
    fn default() -> Self {
        SessionState::with_seed(0)
    }
}

type Step = Result<Vec<Finding>, Vec<Finding>>;

fn reject<T>(finding: Finding) -> Result<T, Vec<Finding>> {
    Err(vec![finding])
}

/// Fresh session in the graph creation stage.
pub fn new_session() -> SessionState {
    SessionState::default()
}

/// Functional form of [`SessionState::apply`].
pub fn apply_action(state: &SessionState, action: &Action) -> (SessionState, StepFeedback) {
    let mut next = state.clone();
    let feedback = next.apply(action);
    (next, feedback)
}

impl SessionState {
    pub fn with_seed(seed: u64) -> Self {
        SessionState {
            stage: Stage::GraphCreation,
            net: FlowNetwork::new(),
            flow: Flow::zero(&FlowNetwork::new()),
            selected_arcs: Vec::new(),
            pending_path: None,
            amount_draft: None,
            pending_amount: None,
            edit_buffer: BTreeMap::new(),
            history: Vec::new(),
            pinned: BTreeSet::new(),
            cut_selection: BTreeSet::new(),
            max_flow_confirmed: false,
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn snapshot(&self) -> Snapshot {
        Snapshot::of(self)
    }

    /// Current residual graph. Only meaningful once the graph is confirmed.
    pub fn residual(&self) -> Option<ResidualGraph> {
        (self.stage != Stage::GraphCreation).then(|| residual_unchecked(&self.net, &self.flow))
    }

    /// Residual graph the pending augmentation will produce.
    pub fn expected_residual(&self) -> Option<ResidualGraph> {
        let path = self.pending_path.as_ref()?;
        let amount = self.pending_amount?;
        let next = augment_unchecked(&self.flow, path, amount);
        Some(residual_unchecked(&self.net, &next))
    }

    /// Applies one action. On rejection the state is left exactly as it was.
    pub fn apply(&mut self, action: &Action) -> StepFeedback {
        if let Some(gate) = self.gate(action) {
            return StepFeedback {
                accepted: false,
                findings: vec![gate],
                changed: Vec::new(),
            };
        }
        let mut work = self.clone();
        match work.dispatch(action) {
            Ok(findings) => {
                let mut changed = changed_fields(&Snapshot::without_history(self), &Snapshot::without_history(&work));
                if work.history != self.history {
                    changed.push("history".to_string());
                }
                *self = work;
                StepFeedback {
                    accepted: true,
                    findings,
                    changed,
                }
            }
            Err(findings) => {
                debug_assert!(!findings.is_empty());
                StepFeedback {
                    accepted: false,
                    findings,
                    changed: Vec::new(),
                }
            }
        }
    }

    fn gate(&self, action: &Action) -> Option<Finding> {
        use Action::*;
        let allowed = match action {
            ExportGraph | SetPosition { .. } => true,
            AddNode { .. }
            | DeleteNode { .. }
            | AddEdge { .. }
            | DeleteEdge { .. }
            | SetCapacity { .. }
            | SetSource { .. }
            | SetSink { .. }
            | ImportGraph { .. }
            | ApplyLayout { .. }
            | ConfirmGraph => self.stage == Stage::GraphCreation,
            SelectArc { .. } | ValidatePath | AutoPath { .. } | ConfirmMaxFlow { .. } => {
                self.stage == Stage::Iterative(Phase::SelectPath)
            }
            DeselectArc { .. } => matches!(self.stage, Stage::Iterative(Phase::SelectPath | Phase::ChooseAmount)),
            HighlightBottleneck | SetAmount { .. } | ConfirmAmount { .. } => {
                self.stage == Stage::Iterative(Phase::ChooseAmount)
            }
            EditResidualArc { .. } | ValidateResidual | AutoResidual => {
                self.stage == Stage::Iterative(Phase::UpdateResidual)
            }
            ToggleCutNode { .. } | ValidateCut | FindMinCut => self.stage == Stage::Finalized,
        };
        (!allowed).then(|| Finding::WrongStage {
            action: action.name().to_string(),
            stage: self.stage.to_string(),
        })
    }

    fn dispatch(&mut self, action: &Action) -> Step {
        use Action::*;
        match action {
            AddNode { id, x, y } => self.add_node(id, *x, *y),
            DeleteNode { id } => self.delete_node(id),
            AddEdge { tail, head, capacity } => self.add_edge(tail, head, *capacity),
            DeleteEdge { tail, head } => {
                let i = self.edge_index(tail, head)?;
                self.net.edges.remove(i);
                self.reset_flow();
                Ok(vec![])
            }
            SetCapacity { tail, head, capacity } => {
                let i = self.edge_index(tail, head)?;
                check_capacity(tail, head, *capacity)?;
                self.net.edges[i].capacity = *capacity;
                Ok(vec![])
            }
            SetSource { id } => self.set_terminal(id, true),
            SetSink { id } => self.set_terminal(id, false),
            ImportGraph { text } => self.import(text),
            ApplyLayout {
                layout,
                width,
                height,
                unpin,
            } => self.apply_layout(*layout, *width, *height, *unpin),
            ConfirmGraph => self.confirm_graph(),
            ExportGraph => Ok(vec![Finding::Exported {
                text: serialize_edgelist(&self.net),
            }]),
            SetPosition { id, x, y } => {
                self.require_node(id)?;
                if !x.is_finite() || !y.is_finite() {
                    return reject(Finding::Layout {
                        message: format!("position ({x}, {y}) is not finite"),
                    });
                }
                self.net.positions.insert(id.clone(), Position { x: *x, y: *y });
                self.pinned.insert(id.clone());
                Ok(vec![])
            }
            SelectArc { tail, head } => self.select_arc(tail, head),
            DeselectArc { tail, head } => self.deselect_arc(tail, head),
            ValidatePath => self.validate_path(),
            AutoPath { strategy } => {
                let residual = residual_unchecked(&self.net, &self.flow);
                let Some(path) = find_path(&residual, *strategy, &mut self.rng) else {
                    return reject(Finding::NoAugmentingPath);
                };
                self.selected_arcs = path
                    .arcs
                    .iter()
                    .map(|a| ArcRef::new(a.tail.clone(), a.head.clone()))
                    .collect();
                let nodes = path.nodes();
                self.pending_path = Some(path);
                self.stage = Stage::Iterative(Phase::ChooseAmount);
                Ok(vec![Finding::PathFound { path: nodes }])
            }
            HighlightBottleneck => {
                let b = bottleneck(self.pending()).expect("pending path is nonempty");
                Ok(vec![Finding::Bottleneck {
                    value: b.value,
                    arcs: b.arcs.into_iter().map(|a| ArcRef::new(a.tail, a.head)).collect(),
                }])
            }
            SetAmount { amount } => {
                self.amount_draft = Some(*amount);
                Ok(vec![])
            }
            ConfirmAmount { amount } => self.confirm_amount(amount.or(self.amount_draft)),
            EditResidualArc { tail, head, capacity } => self.edit_residual(tail, head, *capacity),
            ValidateResidual => self.validate_residual(),
            AutoResidual => {
                let expected = self.expected_residual().expect("update phase has a pending step");
                self.edit_buffer = arc_map(&expected);
                Ok(self.commit())
            }
            ConfirmMaxFlow { value } => self.confirm_max_flow(*value),
            ToggleCutNode { id } => {
                self.require_node(id)?;
                if !self.cut_selection.remove(id) {
                    self.cut_selection.insert(id.clone());
                }
                Ok(vec![])
            }
            ValidateCut => match validate_cut(&self.net, &self.cut_selection) {
                Err(e) => reject(Finding::CutProblem { message: e.to_string() }),
                Ok(verdict) if verdict.valid => Ok(vec![Finding::CutVerdict { verdict }]),
                Ok(verdict) => reject(Finding::CutVerdict { verdict }),
            },
            FindMinCut => {
                let cut = find_min_cut(&self.net).expect("finalized network is valid");
                self.cut_selection = cut.s_side.clone();
                Ok(vec![Finding::MinCut { cut }])
            }
        }
    }

    fn pending(&self) -> &Path {
        self.pending_path
            .as_ref()
            .expect("pending path is set after select path")
    }

    fn require_node(&self, id: &NodeId) -> Result<(), Vec<Finding>> {
        if self.net.nodes.contains(id) {
            Ok(())
        } else {
            reject(Finding::UnknownNode { id: id.clone() })
        }
    }

    fn edge_index(&self, tail: &NodeId, head: &NodeId) -> Result<usize, Vec<Finding>> {
        self.net.edge_index(tail, head).ok_or_else(|| {
            vec![Finding::UnknownEdge {
                tail: tail.clone(),
                head: head.clone(),
            }]
        })
    }

    fn reset_flow(&mut self) {
        self.flow = Flow::zero(&self.net);
    }

    // --- graph creation ---------------------------------------------------

    fn add_node(&mut self, id: &NodeId, x: Option<f64>, y: Option<f64>) -> Step {
        if self.net.nodes.contains(id) {
            return reject(Finding::NodeExists { id: id.clone() });
        }
        let position = match (x, y) {
            (Some(x), Some(y)) if x.is_finite() && y.is_finite() => Some(Position { x, y }),
            (None, None) => None,
            _ => {
                return reject(Finding::Layout {
                    message: "a node position needs finite x and y".to_string(),
                })
            }
        };
        self.net.nodes.insert(id.clone());
        if let Some(p) = position {
            self.net.positions.insert(id.clone(), p);
            self.pinned.insert(id.clone());
        }
        Ok(vec![])
    }

    fn delete_node(&mut self, id: &NodeId) -> Step {
        self.require_node(id)?;
        self.net.nodes.remove(id);
        self.net.edges.retain(|e| &e.tail != id && &e.head != id);
        self.net.positions.remove(id);
        self.pinned.remove(id);
        if self.net.source.as_ref() == Some(id) {
            self.net.source = None;
        }
        if self.net.sink.as_ref() == Some(id) {
            self.net.sink = None;
        }
        self.reset_flow();
        Ok(vec![])
    }

    fn add_edge(&mut self, tail: &NodeId, head: &NodeId, capacity: Capacity) -> Step {
        let mut problems = Vec::new();
        for id in [tail, head] {
            if !self.net.nodes.contains(id) {
                problems.push(Finding::UnknownNode { id: id.clone() });
            }
        }
        if tail == head {
            problems.push(Finding::Network {
                violation: NetworkViolation::SelfLoop { node: tail.clone() },
            });
        }
        if let Err(mut f) = check_capacity(tail, head, capacity) {
            problems.append(&mut f);
        }
        if self.net.edge(tail, head).is_some() {
            problems.push(Finding::EdgeExists {
                tail: tail.clone(),
                head: head.clone(),
            });
        } else if self.net.edge(head, tail).is_some() {
            let (a, b) = if tail < head { (tail, head) } else { (head, tail) };
            problems.push(Finding::Network {
                violation: NetworkViolation::AntiParallelPair {
                    a: a.clone(),
                    b: b.clone(),
                },
            });
        }
        if !problems.is_empty() {
            return Err(problems);
        }
        self.net.edges.push(Edge {
            tail: tail.clone(),
            head: head.clone(),
            capacity,
        });
        self.reset_flow();
        Ok(vec![])
    }

    fn set_terminal(&mut self, id: &NodeId, source: bool) -> Step {
        self.require_node(id)?;
        let other = if source { &self.net.sink } else { &self.net.source };
        if other.as_ref() == Some(id) {
            return reject(Finding::Network {
                violation: NetworkViolation::SourceIsSink { node: id.clone() },
            });
        }
        if source {
            self.net.source = Some(id.clone());
        } else {
            self.net.sink = Some(id.clone());
        }
        Ok(vec![])
    }

    fn import(&mut self, text: &str) -> Step {
        let net = parse_edgelist_draft(text).map_err(|errors| {
            errors
                .into_iter()
                .map(|error| Finding::Parse { error })
                .collect::<Vec<_>>()
        })?;
        self.pinned = net.positions.keys().cloned().collect();
        self.net = net;
        self.reset_flow();
        Ok(vec![])
    }

    fn apply_layout(&mut self, kind: LayoutKind, width: Option<f64>, height: Option<f64>, unpin: bool) -> Step {
        let width = width.unwrap_or(DEFAULT_LAYOUT_WIDTH);
        let height = height.unwrap_or(DEFAULT_LAYOUT_HEIGHT);
        let computed = match kind {
            LayoutKind::Spring => spring_layout(&self.net, width, height, self.rng.next_u64()),
            LayoutKind::Layered => layered_layout(&self.net, width, height),
        }
        .map_err(|e| vec![Finding::Layout { message: e.to_string() }])?;
        if unpin {
            self.pinned.clear();
        }
        for (id, p) in computed {
            if !self.pinned.contains(&id) {
                self.net.positions.insert(id, p);
            }
        }
        Ok(vec![])
    }

    fn confirm_graph(&mut self) -> Step {
        if let Err(violations) = self.net.validate() {
            return Err(violations
                .into_iter()
                .map(|violation| Finding::Network { violation })
                .collect());
        }
        if !self.net.sink_reachable() {
            return reject(Finding::SinkUnreachable);
        }
        self.reset_flow();
        self.stage = Stage::Iterative(Phase::SelectPath);
        Ok(vec![Finding::GraphConfirmed])
    }

    // --- select path -------------------------------------------------------

    fn select_arc(&mut self, tail: &NodeId, head: &NodeId) -> Step {
        let residual = residual_unchecked(&self.net, &self.flow);
        if residual.arc(tail, head).is_none() {
            return reject(Finding::UnknownArc {
                tail: tail.clone(),
                head: head.clone(),
            });
        }
        let arc = ArcRef::new(tail.clone(), head.clone());
        if self.selected_arcs.contains(&arc) {
            return reject(Finding::ArcAlreadySelected {
                tail: tail.clone(),
                head: head.clone(),
            });
        }
        self.selected_arcs.push(arc);
        Ok(vec![])
    }

    /// Deselecting during the amount phase abandons the accepted path.
    fn deselect_arc(&mut self, tail: &NodeId, head: &NodeId) -> Step {
        let arc = ArcRef::new(tail.clone(), head.clone());
        let Some(i) = self.selected_arcs.iter().position(|a| a == &arc) else {
            return reject(Finding::ArcNotSelected {
                tail: tail.clone(),
                head: head.clone(),
            });
        };
        self.selected_arcs.remove(i);
        if self.stage == Stage::Iterative(Phase::ChooseAmount) {
            self.pending_path = None;
            self.amount_draft = None;
            self.stage = Stage::Iterative(Phase::SelectPath);
        }
        Ok(vec![])
    }

    fn validate_path(&mut self) -> Step {
        let residual = residual_unchecked(&self.net, &self.flow);
        let path = path_from_selection(&residual, &self.selected_arcs)?;
        let nodes = path.nodes();
        self.pending_path = Some(path);
        self.stage = Stage::Iterative(Phase::ChooseAmount);
        Ok(vec![Finding::PathAccepted { path: nodes }])
    }

    fn confirm_max_flow(&mut self, value: Capacity) -> Step {
        if residual_unchecked(&self.net, &self.flow).has_augmenting_path() {
            return reject(Finding::AugmentingPathExists);
        }
        let actual = value_unchecked(&self.net, &self.flow);
        if value != actual {
            return reject(Finding::IncorrectValue { entered: value });
        }
        self.selected_arcs.clear();
        self.max_flow_confirmed = true;
        self.stage = Stage::Finalized;
        Ok(vec![Finding::MaxFlowConfirmed { value }])
    }

    // --- choose amount -----------------------------------------------------

    fn confirm_amount(&mut self, amount: Option<Capacity>) -> Step {
        let Some(amount) = amount else {
            return reject(Finding::NoAmount);
        };
        if amount <= 0 {
            return reject(Finding::AmountNotPositive { amount });
        }
        let b = bottleneck(self.pending()).expect("pending path is nonempty").value;
        if amount > b {
            return reject(Finding::AmountExceedsBottleneck { amount, bottleneck: b });
        }
        self.pending_amount = Some(amount);
        self.amount_draft = None;
        self.edit_buffer = arc_map(&residual_unchecked(&self.net, &self.flow));
        self.stage = Stage::Iterative(Phase::UpdateResidual);
        Ok(vec![Finding::AmountAccepted { amount }])
    }

    // --- update residual ---------------------------------------------------

    fn edit_residual(&mut self, tail: &NodeId, head: &NodeId, capacity: Capacity) -> Step {
        self.require_node(tail)?;
        self.require_node(head)?;
        if tail == head {
            return reject(Finding::Network {
                violation: NetworkViolation::SelfLoop { node: tail.clone() },
            });
        }
        if capacity < 0 {
            return reject(Finding::NegativeResidual {
                tail: tail.clone(),
                head: head.clone(),
                capacity,
            });
        }
        let arc = ArcRef::new(tail.clone(), head.clone());
        if capacity == 0 {
            self.edit_buffer.remove(&arc);
        } else {
            self.edit_buffer.insert(arc, capacity);
        }
        Ok(vec![])
    }

    fn validate_residual(&mut self) -> Step {
        let expected = arc_map(&self.expected_residual().expect("update phase has a pending step"));
        let problems = residual_differences(&expected, &self.edit_buffer);
        if !problems.is_empty() {
            return Err(problems);
        }
        Ok(self.commit())
    }

    fn commit(&mut self) -> Vec<Finding> {
        let path = self.pending_path.take().expect("pending path");
        let amount = self.pending_amount.take().expect("pending amount");
        self.flow = augment_unchecked(&self.flow, &path, amount);
        let nodes = path.nodes();
        self.history.push(Arc::new(Augmentation { path, amount }));
        self.selected_arcs.clear();
        self.edit_buffer.clear();
        self.amount_draft = None;
        self.stage = Stage::Iterative(Phase::SelectPath);
        vec![Finding::AugmentationCommitted {
            path: nodes,
            amount,
            value: value_unchecked(&self.net, &self.flow),
        }]
    }

    /// Checks every structural invariant of the state; used by tests and
    /// fuzzers.
    pub fn check_invariants(&self) -> Result<(), String> {
        check_flow(&self.net, &self.flow).map_err(|v| format!("flow invalid: {v:?}"))?;
        let phase = match self.stage {
            Stage::Iterative(p) => Some(p),
            _ => None,
        };
        if self.pending_path.is_some() && !matches!(phase, Some(Phase::ChooseAmount | Phase::UpdateResidual)) {
            return Err(format!("pending path set in {}", self.stage));
        }
        if self.pending_path.is_none() && matches!(phase, Some(Phase::ChooseAmount | Phase::UpdateResidual)) {
            return Err(format!("no pending path in {}", self.stage));
        }
        if self.pending_amount.is_some() != (phase == Some(Phase::UpdateResidual)) {
            return Err(format!("pending amount mismatch in {}", self.stage));
        }
        if self.stage == Stage::GraphCreation {
            if !self.history.is_empty() || self.flow != Flow::zero(&self.net) {
                return Err("graph creation with nonzero flow or history".to_string());
            }
            return Ok(());
        }
        self.net
            .validate()
            .map_err(|v| format!("confirmed network became invalid: {v:?}"))?;
        let replayed = replay(&self.net, self.history.iter().map(|h| &**h))
            .map_err(|e| format!("history does not replay: {e}"))?;
        if replayed != self.flow {
            return Err("history does not reproduce the flow".to_string());
        }
        if let Some(path) = &self.pending_path {
            let b = bottleneck(path).map_err(|e| e.to_string())?.value;
            if let Some(a) = self.pending_amount {
                if a < 1 || a > b {
                    return Err(format!("pending amount {a} outside 1..={b}"));
                }
            }
        }
        if self.max_flow_confirmed != (self.stage == Stage::Finalized) {
            return Err("max flow confirmation out of sync with stage".to_string());
        }
        Ok(())
    }
}

fn check_capacity(tail: &NodeId, head: &NodeId, capacity: Capacity) -> Result<(), Vec<Finding>> {
    if capacity < 0 {
        reject(Finding::Network {
            violation: NetworkViolation::NegativeCapacity {
                tail: tail.clone(),
                head: head.clone(),
                capacity,
            },
        })
    } else {
        Ok(())
    }
}

fn arc_map(residual: &ResidualGraph) -> BTreeMap<ArcRef, Capacity> {
    residual
        .arcs
        .iter()
        .map(|a| (ArcRef::new(a.tail.clone(), a.head.clone()), a.capacity))
        .collect()
}

/// Per-arc comparison of an edited residual graph against the expected one.
/// Zero-capacity entries in `entered` count as absent.
pub fn residual_differences(
    expected: &BTreeMap<ArcRef, Capacity>,
    entered: &BTreeMap<ArcRef, Capacity>,
) -> Vec<Finding> {
    let mut out = Vec::new();
    let arcs: BTreeSet<&ArcRef> = expected
        .keys()
        .chain(entered.iter().filter(|(_, &c)| c != 0).map(|(a, _)| a))
        .collect();
    for arc in arcs {
        let want = expected.get(arc).copied().unwrap_or(0);
        let got = entered.get(arc).copied().unwrap_or(0);
        let (tail, head) = (arc.tail.clone(), arc.head.clone());
        match (want, got) {
            (w, g) if w == g => {}
            (_, 0) => out.push(Finding::MissingResidualArc { tail, head }),
            (0, g) => out.push(Finding::ExtraneousResidualArc {
                tail,
                head,
                capacity: g,
            }),
            (_, g) => out.push(Finding::WrongResidualCapacity { tail, head, entered: g }),
        }
    }
    out
}

/// Reads an unordered arc selection as exactly one simple source-to-sink
/// path, or explains why it is not one.
pub fn path_from_selection(residual: &ResidualGraph, selected: &[ArcRef]) -> Result<Path, Vec<Finding>> {
    if selected.is_empty() {
        return reject(Finding::EmptySelection);
    }
    let mut arcs = Vec::with_capacity(selected.len());
    for a in selected {
        match residual.arc(&a.tail, &a.head) {
            Some(arc) => arcs.push(arc.clone()),
            None => {
                return reject(Finding::UnknownArc {
                    tail: a.tail.clone(),
                    head: a.head.clone(),
                })
            }
        }
    }
    arcs.sort_by(|a, b| (&a.tail, &a.head).cmp(&(&b.tail, &b.head)));
    fn out_of<'a>(arcs: &'a [ResidualArc], v: &'a NodeId) -> impl Iterator<Item = (usize, &'a ResidualArc)> + 'a {
        arcs.iter().enumerate().filter(move |(_, a)| &a.tail == v)
    }

    // Fewest-arc route through the selection, in id order.
    let mut parent: BTreeMap<&NodeId, usize> = BTreeMap::new();
    let mut order = vec![&residual.source];
    let mut queue = VecDeque::from([&residual.source]);
    let mut reached_sink = false;
    while let Some(u) = queue.pop_front() {
        if u == &residual.sink {
            reached_sink = true;
            break;
        }
        for (i, a) in out_of(&arcs, u) {
            if a.head != residual.source && !parent.contains_key(&a.head) {
                parent.insert(&a.head, i);
                order.push(&a.head);
                queue.push_back(&a.head);
            }
        }
    }

    if reached_sink {
        let mut on_path = Vec::new();
        let mut cur = &residual.sink;
        while let Some(&i) = parent.get(cur) {
            on_path.push(i);
            cur = &arcs[i].tail;
        }
        on_path.reverse();
        let redundant: Vec<ArcRef> = arcs
            .iter()
            .enumerate()
            .filter(|(i, _)| !on_path.contains(i))
            .map(|(_, a)| ArcRef::new(a.tail.clone(), a.head.clone()))
            .collect();
        if !redundant.is_empty() {
            return reject(Finding::RedundantArcs { arcs: redundant });
        }
        return Ok(Path::new(on_path.into_iter().map(|i| arcs[i].clone()).collect()));
    }

    let mut problems = Vec::new();
    if out_of(&arcs, &residual.source).next().is_none() {
        problems.push(Finding::PathMustStartAtSource);
    }
    if !arcs.iter().any(|a| a.head == residual.sink) {
        problems.push(Finding::PathMustEndAtSink);
    }
    if !problems.is_empty() {
        return Err(problems);
    }
    // Deepest node reached forward from the source, and deepest reached
    // backward from the sink: the gap lies between them.
    let from = (*order.last().expect("source is always reached")).clone();
    let mut back_seen = BTreeSet::from([&residual.sink]);
    let mut back_order = vec![&residual.sink];
    let mut queue = VecDeque::from([&residual.sink]);
    while let Some(v) = queue.pop_front() {
        for a in arcs.iter().filter(|a| &a.head == v) {
            if back_seen.insert(&a.tail) {
                back_order.push(&a.tail);
                queue.push_back(&a.tail);
            }
        }
    }
    let to = (*back_order.last().expect("sink is always reached")).clone();
    reject(Finding::PathDisconnected { from, to })
}

fn changed_fields(before: &Snapshot, after: &Snapshot) -> Vec<String> {
    let (Ok(serde_json::Value::Object(a)), Ok(serde_json::Value::Object(b))) =
        (serde_json::to_value(before), serde_json::to_value(after))
    else {
        return Vec::new();
    };
    b.iter()
        .filter(|(k, v)| a.get(*k) != Some(*v))
        .map(|(k, _)| k.clone())
        .collect()
}
