//! Brute-force oracles and random network generators shared by the
//! integration tests. Nothing here calls into the solver.
#![allow(dead_code)]

use std::collections::BTreeSet;

use flowtutor::flow::ResidualGraph;
use flowtutor::network::{node, Capacity, Edge, FlowNetwork, NodeId};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Node names used by generated networks: `s`, `t` and `v0..`.
pub fn names(n: usize) -> Vec<String> {
    let mut out = vec!["s".to_string(), "t".to_string()];
    out.extend((0..n.saturating_sub(2)).map(|i| format!("v{i}")));
    out
}

/// Builds a network on `n` nodes from candidate (u, v, c) index triples,
/// skipping self-loops, duplicates and anti-parallel partners.
pub fn build(n: usize, candidates: &[(usize, usize, Capacity)]) -> FlowNetwork {
    let names = names(n);
    let mut net = FlowNetwork::new();
    for name in &names {
        net.nodes.insert(node(name));
    }
    net.source = Some(node("s"));
    net.sink = Some(node("t"));
    let mut used = BTreeSet::new();
    for &(u, v, c) in candidates {
        let (u, v) = (u % n, v % n);
        if u == v || used.contains(&(u, v)) || used.contains(&(v, u)) {
            continue;
        }
        used.insert((u, v));
        net.edges.push(Edge {
            tail: node(&names[u]),
            head: node(&names[v]),
            capacity: c,
        });
    }
    net
}

/// Seeded random network with `n` nodes, capacities in 0..=max_cap.
pub fn random_network(n: usize, max_cap: Capacity, seed: u64) -> FlowNetwork {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = rng.random_range(0.25..0.8);
    let mut candidates = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.random_bool(density) {
                candidates.push((u, v, rng.random_range(0..=max_cap)));
            }
        }
    }
    build(n, &candidates)
}

/// The acceptance corpus: sizes 2..=8, `per_size` seeds each.
pub fn corpus(per_size: u64) -> Vec<FlowNetwork> {
    let mut out = Vec::new();
    for n in 2..=8usize {
        for seed in 0..per_size {
            out.push(random_network(n, 10, (n as u64) << 32 | seed));
        }
    }
    out
}

pub fn arb_network(max_nodes: usize, max_cap: Capacity) -> impl Strategy<Value = FlowNetwork> {
    (2..=max_nodes).prop_flat_map(move |n| {
        prop::collection::vec((0..n, 0..n, 0..=max_cap), 0..(n * n)).prop_map(move |cands| build(n, &cands))
    })
}

/// Direct evaluation of c(S, S̄).
pub fn cut_value(net: &FlowNetwork, s_side: &BTreeSet<NodeId>) -> Capacity {
    let mut total = 0;
    for e in &net.edges {
        if s_side.contains(&e.tail) && !s_side.contains(&e.head) {
            total += e.capacity;
        }
    }
    total
}

/// Every s-t cut as (s-side, capacity), by enumerating all subsets of the
/// inner nodes.
pub fn all_cuts(net: &FlowNetwork) -> Vec<(BTreeSet<NodeId>, Capacity)> {
    let s = net.source.clone().unwrap();
    let t = net.sink.clone().unwrap();
    let inner: Vec<NodeId> = net.nodes.iter().filter(|v| **v != s && **v != t).cloned().collect();
    let mut out = Vec::with_capacity(1 << inner.len());
    for mask in 0u32..(1 << inner.len()) {
        let mut side = BTreeSet::from([s.clone()]);
        for (i, v) in inner.iter().enumerate() {
            if mask & (1 << i) != 0 {
                side.insert(v.clone());
            }
        }
        let c = cut_value(net, &side);
        out.push((side, c));
    }
    out
}

/// Minimum cut capacity and every s-side that attains it.
pub fn min_cut_family(net: &FlowNetwork) -> (Capacity, Vec<BTreeSet<NodeId>>) {
    let cuts = all_cuts(net);
    let best = cuts.iter().map(|(_, c)| *c).min().unwrap();
    let family = cuts.into_iter().filter(|(_, c)| *c == best).map(|(s, _)| s).collect();
    (best, family)
}

/// Every simple source-to-sink path in a residual graph, as
/// (node sequence, bottleneck).
pub fn all_augmenting_paths(residual: &ResidualGraph) -> Vec<(Vec<NodeId>, Capacity)> {
    fn walk(
        r: &ResidualGraph,
        at: &NodeId,
        trail: &mut Vec<NodeId>,
        width: Capacity,
        out: &mut Vec<(Vec<NodeId>, Capacity)>,
    ) {
        if at == &r.sink {
            out.push((trail.clone(), width));
            return;
        }
        for a in r.arcs.iter().filter(|a| &a.tail == at) {
            if trail.contains(&a.head) {
                continue;
            }
            trail.push(a.head.clone());
            walk(r, &a.head.clone(), trail, width.min(a.capacity), out);
            trail.pop();
        }
    }
    let mut out = Vec::new();
    let mut trail = vec![residual.source.clone()];
    walk(residual, &residual.source.clone(), &mut trail, Capacity::MAX, &mut out);
    out
}

/// All node subsets that are neither empty nor the whole node set.
pub fn proper_subsets(net: &FlowNetwork) -> Vec<BTreeSet<NodeId>> {
    let all: Vec<NodeId> = net.nodes.iter().cloned().collect();
    let n = all.len();
    (1u32..(1 << n) - 1)
        .map(|mask| {
            all.iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, v)| v.clone())
                .collect()
        })
        .collect()
}

/// Random edgelist-ish text: a mix of well-formed records, near misses and
/// junk tokens.
pub fn fuzz_document(rng: &mut ChaCha8Rng) -> String {
    const IDS: &[&str] = &["s", "t", "a", "b", "c", "x1", "é", "#a", "9"];
    const JUNK: &[&str] = &[
        "source",
        "sink",
        "node",
        "pos",
        "-3",
        "0",
        "7",
        "2.5",
        "1e3",
        "NaN",
        "inf",
        "",
        "#",
        "abc",
        "99999999999999999999",
        "\t",
        "s t",
        "→",
    ];
    let pick = |rng: &mut ChaCha8Rng, from: &[&str]| from[rng.random_range(0..from.len())].to_string();
    let lines = rng.random_range(0..14);
    let mut out = String::new();
    for _ in 0..lines {
        let line = match rng.random_range(0..9) {
            0 => format!("source {}", pick(rng, IDS)),
            1 => format!("sink {}", pick(rng, IDS)),
            2 | 3 => format!("{} {} {}", pick(rng, IDS), pick(rng, IDS), rng.random_range(-2..12)),
            4 => format!(
                "pos {} {} {}",
                pick(rng, IDS),
                pick(rng, JUNK),
                rng.random_range(-50.0..50.0)
            ),
            5 => format!("# {}", pick(rng, JUNK)),
            6 => format!("node {}", pick(rng, IDS)),
            _ => {
                let n = rng.random_range(0..6);
                (0..n)
                    .map(|_| {
                        if rng.random_bool(0.5) {
                            pick(rng, JUNK)
                        } else {
                            pick(rng, IDS)
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            }
        };
        out.push_str(&line);
        out.push(if rng.random_bool(0.1) { '\r' } else { ' ' });
        out.push('\n');
    }
    out
}

/// One random action, biased toward the current stage and toward things that
/// exist in the state so that sessions actually progress.
pub fn random_action(rng: &mut ChaCha8Rng, state: &flowtutor::SessionState) -> flowtutor::Action {
    use flowtutor::layout::LayoutKind;
    use flowtutor::session::Stage;
    use flowtutor::Action::*;
    use flowtutor::StrategyName;

    let mut ids: Vec<NodeId> = state.net.nodes.iter().cloned().collect();
    ids.extend(["s", "t", "a", "b", "c", "d"].map(node));
    let id = |rng: &mut ChaCha8Rng| ids[rng.random_range(0..ids.len())].clone();
    let arcs: Vec<(NodeId, NodeId, Capacity)> = state
        .residual()
        .map(|r| {
            r.arcs
                .iter()
                .map(|a| (a.tail.clone(), a.head.clone(), a.capacity))
                .collect()
        })
        .unwrap_or_default();
    let arc = |rng: &mut ChaCha8Rng| {
        if !arcs.is_empty() && rng.random_bool(0.85) {
            let (u, v, _) = &arcs[rng.random_range(0..arcs.len())];
            (u.clone(), v.clone())
        } else {
            (id(rng), id(rng))
        }
    };
    let strategy = |rng: &mut ChaCha8Rng| {
        [StrategyName::Random, StrategyName::Shortest, StrategyName::Widest][rng.random_range(0..3)]
    };
    let value = state.snapshot().flow_value.unwrap_or(0);

    let roll = rng.random_range(0..100);
    if roll < 4 {
        return ExportGraph;
    }
    if roll < 7 {
        return SetPosition {
            id: id(rng),
            x: rng.random_range(-10.0..900.0),
            y: rng.random_range(-10.0..700.0),
        };
    }
    if roll < 12 {
        // Off-stage noise.
        return match rng.random_range(0..6) {
            0 => ConfirmGraph,
            1 => ValidatePath,
            2 => ConfirmAmount {
                amount: Some(rng.random_range(-1..4)),
            },
            3 => AutoResidual,
            4 => FindMinCut,
            _ => AddNode {
                id: id(rng),
                x: None,
                y: None,
            },
        };
    }
    match state.stage {
        Stage::GraphCreation => match rng.random_range(0..12) {
            0 => AddNode {
                id: id(rng),
                x: None,
                y: None,
            },
            1 => DeleteNode { id: id(rng) },
            2 | 3 => {
                let (u, v) = (id(rng), id(rng));
                AddEdge {
                    tail: u,
                    head: v,
                    capacity: rng.random_range(-1..8),
                }
            }
            4 => DeleteEdge {
                tail: id(rng),
                head: id(rng),
            },
            5 => match state.net.edges.get(rng.random_range(0..state.net.edges.len().max(1))) {
                Some(e) => SetCapacity {
                    tail: e.tail.clone(),
                    head: e.head.clone(),
                    capacity: rng.random_range(-1..8),
                },
                None => SetCapacity {
                    tail: id(rng),
                    head: id(rng),
                    capacity: 1,
                },
            },
            6 => SetSource { id: id(rng) },
            7 => SetSink { id: id(rng) },
            8 => {
                let n = rng.random_range(2..6);
                ImportGraph {
                    text: flowtutor::serialize_edgelist(&random_network(n, 6, rng.random())),
                }
            }
            9 => ApplyLayout {
                layout: if rng.random_bool(0.5) {
                    LayoutKind::Spring
                } else {
                    LayoutKind::Layered
                },
                width: None,
                height: None,
                unpin: rng.random_bool(0.3),
            },
            _ => ConfirmGraph,
        },
        Stage::Iterative(flowtutor::session::Phase::SelectPath) => match rng.random_range(0..10) {
            0..=3 => {
                let (tail, head) = arc(rng);
                SelectArc { tail, head }
            }
            4 => {
                let (tail, head) = arc(rng);
                DeselectArc { tail, head }
            }
            5 => ValidatePath,
            6 | 7 => AutoPath {
                strategy: strategy(rng),
            },
            _ => ConfirmMaxFlow {
                value: value + rng.random_range(-1..=1),
            },
        },
        Stage::Iterative(flowtutor::session::Phase::ChooseAmount) => {
            let b = state
                .pending_path
                .as_ref()
                .map(|p| flowtutor::bottleneck(p).unwrap().value)
                .unwrap_or(1);
            match rng.random_range(0..8) {
                0 => HighlightBottleneck,
                1 => SetAmount {
                    amount: rng.random_range(-1..=b + 1),
                },
                2 => ConfirmAmount { amount: None },
                3 => {
                    let (tail, head) = arc(rng);
                    DeselectArc { tail, head }
                }
                _ => ConfirmAmount {
                    amount: Some(rng.random_range(0..=b + 1)),
                },
            }
        }
        Stage::Iterative(flowtutor::session::Phase::UpdateResidual) => match rng.random_range(0..6) {
            0 | 1 => {
                let (tail, head) = arc(rng);
                EditResidualArc {
                    tail,
                    head,
                    capacity: rng.random_range(-1..8),
                }
            }
            2 => ValidateResidual,
            _ => AutoResidual,
        },
        Stage::Finalized => match rng.random_range(0..4) {
            0 | 1 => ToggleCutNode { id: id(rng) },
            2 => ValidateCut,
            _ => FindMinCut,
        },
    }
}

/// Outcome of one fuzzed session: the first broken property, if any.
pub struct FuzzRun {
    pub actions: Vec<flowtutor::Action>,
    pub accepted: usize,
    pub reached_finalized: bool,
    pub final_state: flowtutor::SessionState,
    pub failure: Option<String>,
}

/// Drives a fresh session with `steps` random actions from `seed`, checking
/// after every step: invariants, legal stage moves, rejected steps leave the
/// state untouched, the flow value never drops once the graph is confirmed.
pub fn fuzz_session(seed: u64, steps: usize) -> FuzzRun {
    use flowtutor::session::Stage;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut state = flowtutor::SessionState::with_seed(seed);
    let mut actions = Vec::with_capacity(steps);
    let mut accepted = 0;
    let mut reached_finalized = false;
    let mut failure = None;
    for step in 0..steps {
        let action = random_action(&mut rng, &state);
        let (next, feedback) = flowtutor::apply_action(&state, &action);
        actions.push(action.clone());
        let tag = format!("step {step} {}", action.name());
        if let Err(e) = next.check_invariants() {
            failure = Some(format!("{tag}: {e}"));
        } else if !state.stage.can_move_to(next.stage) {
            failure = Some(format!("{tag}: illegal move {} -> {}", state.stage, next.stage));
        } else if !feedback.accepted && next != state {
            failure = Some(format!("{tag}: rejected action changed the state"));
        } else if feedback.accepted == feedback.findings.iter().any(|f| f.is_rejection()) {
            failure = Some(format!(
                "{tag}: acceptance disagrees with findings {:?}",
                feedback.findings
            ));
        } else if state.stage != Stage::GraphCreation {
            let before = state.snapshot().flow_value.unwrap_or(0);
            let after = next.snapshot().flow_value.unwrap_or(0);
            if after < before {
                failure = Some(format!("{tag}: value dropped {before} -> {after}"));
            }
        }
        if failure.is_some() {
            break;
        }
        accepted += usize::from(feedback.accepted);
        reached_finalized |= next.stage == Stage::Finalized;
        state = next;
    }
    FuzzRun {
        actions,
        accepted,
        reached_finalized,
        final_state: state,
        failure,
    }
}
