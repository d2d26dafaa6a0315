//! Augmenting-path search strategies and the autonomous solver loop.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::flow::{
    augment_unchecked, bottleneck, residual_unchecked, value_unchecked, Flow, FlowError, Path, ResidualGraph,
};
use crate::network::{Capacity, FlowNetwork};

/// Path-selection rule, with the seed for the random variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "strategy", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum Strategy {
    Random { seed: u64 },
    Shortest,
    Widest,
}

/// Strategy names as they appear on the wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyName {
    Random,
    Shortest,
    Widest,
}

impl StrategyName {
    pub fn with_seed(self, seed: u64) -> Strategy {
        match self {
            StrategyName::Random => Strategy::Random { seed },
            StrategyName::Shortest => Strategy::Shortest,
            StrategyName::Widest => Strategy::Widest,
        }
    }
}

impl fmt::Display for StrategyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StrategyName::Random => "random",
            StrategyName::Shortest => "shortest",
            StrategyName::Widest => "widest",
        })
    }
}

impl FromStr for StrategyName {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "random" => Ok(StrategyName::Random),
            "shortest" => Ok(StrategyName::Shortest),
            "widest" => Ok(StrategyName::Widest),
            other => Err(format!(
                "unknown strategy {other:?} (expected random, shortest or widest)"
            )),
        }
    }
}

/// Randomized depth-first search from the source, seeded.
pub fn find_random_path(residual: &ResidualGraph, seed: u64) -> Option<Path> {
    find_random_path_with(residual, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Randomized depth-first search drawing from `rng`.
///
/// At every step one arc to a not-yet-visited node is picked uniformly.
/// Dead ends are popped; a node, once visited, is never entered again.
pub fn find_random_path_with<R: Rng + ?Sized>(residual: &ResidualGraph, rng: &mut R) -> Option<Path> {
    let n = residual.nodes.len();
    let mut visited = vec![false; n];
    visited[residual.source_ix] = true;
    let mut stack = vec![residual.source_ix];
    let mut arcs: Vec<usize> = Vec::new();
    while let Some(&top) = stack.last() {
        if top == residual.sink_ix {
            return Some(residual.path_from_arc_indices(&arcs));
        }
        let choices: Vec<(usize, usize)> = residual.adjacency[top]
            .iter()
            .copied()
            .filter(|&(v, _)| !visited[v])
            .collect();
        if choices.is_empty() {
            stack.pop();
            arcs.pop();
            continue;
        }
        let (v, arc) = choices[rng.random_range(0..choices.len())];
        visited[v] = true;
        stack.push(v);
        arcs.push(arc);
    }
    None
}

/// BFS over arcs with capacity at least `min_capacity`; neighbours are
/// expanded in ascending id order so the result is canonical.
fn bfs_path(residual: &ResidualGraph, min_capacity: Capacity) -> Option<Path> {
    let n = residual.nodes.len();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    seen[residual.source_ix] = true;
    let mut queue = VecDeque::from([residual.source_ix]);
    while let Some(u) = queue.pop_front() {
        if u == residual.sink_ix {
            break;
        }
        for &(v, arc) in &residual.adjacency[u] {
            if !seen[v] && residual.arcs[arc].capacity >= min_capacity {
                seen[v] = true;
                parent[v] = Some(arc);
                queue.push_back(v);
            }
        }
    }
    if !seen[residual.sink_ix] {
        return None;
    }
    let mut arcs = Vec::new();
    let mut cur = residual.sink_ix;
    while let Some(arc) = parent[cur] {
        arcs.push(arc);
        cur = residual
            .nodes
            .binary_search(&residual.arcs[arc].tail)
            .expect("tail is a node");
    }
    arcs.reverse();
    Some(residual.path_from_arc_indices(&arcs))
}

/// Fewest-edges augmenting path (Edmonds-Karp choice).
pub fn find_shortest_path(residual: &ResidualGraph) -> Option<Path> {
    bfs_path(residual, 1)
}

/// Largest bottleneck capacity reachable at the sink, by max-bottleneck
/// Dijkstra. `None` if the sink is unreachable.
pub fn widest_bottleneck(residual: &ResidualGraph) -> Option<Capacity> {
    let n = residual.nodes.len();
    let mut width: Vec<Capacity> = vec![0; n];
    let mut done = vec![false; n];
    width[residual.source_ix] = Capacity::MAX;
    let mut heap = BinaryHeap::from([(Capacity::MAX, Reverse(residual.source_ix))]);
    while let Some((w, Reverse(u))) = heap.pop() {
        if done[u] || w < width[u] {
            continue;
        }
        done[u] = true;
        if u == residual.sink_ix {
            return Some(w);
        }
        for &(v, arc) in &residual.adjacency[u] {
            let through = w.min(residual.arcs[arc].capacity);
            if !done[v] && through > width[v] {
                width[v] = through;
                heap.push((through, Reverse(v)));
            }
        }
    }
    None
}

/// Maximum-bottleneck augmenting path. Among widest paths the one with the
/// fewest edges is returned, remaining ties broken by ascending node id.
pub fn find_widest_path(residual: &ResidualGraph) -> Option<Path> {
    let best = widest_bottleneck(residual)?;
    bfs_path(residual, best)
}

pub fn find_path<R: Rng + ?Sized>(residual: &ResidualGraph, strategy: StrategyName, rng: &mut R) -> Option<Path> {
    match strategy {
        StrategyName::Random => find_random_path_with(residual, rng),
        StrategyName::Shortest => find_shortest_path(residual),
        StrategyName::Widest => find_widest_path(residual),
    }
}

/// One committed augmentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Augmentation {
    pub path: Path,
    pub amount: Capacity,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SolveResult {
    pub max_flow: Flow,
    pub value: Capacity,
    pub iterations: usize,
    pub history: Vec<Augmentation>,
}

/// Runs Ford-Fulkerson to completion, always augmenting by the full
/// bottleneck of the path the strategy picks.
pub fn solve(net: &FlowNetwork, strategy: Strategy) -> Result<SolveResult, FlowError> {
    net.validate().map_err(FlowError::InvalidNetwork)?;
    let (name, seed) = match strategy {
        Strategy::Random { seed } => (StrategyName::Random, seed),
        Strategy::Shortest => (StrategyName::Shortest, 0),
        Strategy::Widest => (StrategyName::Widest, 0),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut flow = Flow::zero(net);
    let mut history = Vec::new();
    loop {
        let residual = residual_unchecked(net, &flow);
        let Some(path) = find_path(&residual, name, &mut rng) else {
            break;
        };
        let amount = bottleneck(&path)?.value;
        flow = augment_unchecked(&flow, &path, amount);
        history.push(Augmentation { path, amount });
    }
    Ok(SolveResult {
        value: value_unchecked(net, &flow),
        iterations: history.len(),
        max_flow: flow,
        history,
    })
}

/// Replays augmentations from the zero flow, checking each step.
pub fn replay<'a>(net: &FlowNetwork, history: impl IntoIterator<Item = &'a Augmentation>) -> Result<Flow, FlowError> {
    let mut flow = Flow::zero(net);
    for step in history {
        flow = crate::flow::augment(net, &flow, &step.path, step.amount)?;
    }
    Ok(flow)
}
