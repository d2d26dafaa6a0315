//! Automatic node placement.

use std::collections::{BTreeMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::network::{FlowNetwork, NodeId, Position};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LayoutKind {
    Spring,
    Layered,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutError {
    #[error("layout box must have positive width and height")]
    EmptyBox,
    #[error("network has no nodes")]
    NoNodes,
    #[error("sink is not reachable from the source")]
    SinkUnreachable,
}

pub type LayoutResult = BTreeMap<NodeId, Position>;

/// Tuning for [`spring_layout_with`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpringParams {
    pub iterations: usize,
    /// Initial step limit as a fraction of the box width; decays linearly
    /// to zero.
    pub initial_temperature: f64,
}

impl Default for SpringParams {
    fn default() -> Self {
        SpringParams {
            iterations: 300,
            initial_temperature: 0.1,
        }
    }
}

fn check_box(width: f64, height: f64) -> Result<(), LayoutError> {
    if width > 0.0 && height > 0.0 && width.is_finite() && height.is_finite() {
        Ok(())
    } else {
        Err(LayoutError::EmptyBox)
    }
}

pub fn spring_layout(net: &FlowNetwork, width: f64, height: f64, seed: u64) -> Result<LayoutResult, LayoutError> {
    spring_layout_with(net, width, height, seed, SpringParams::default())
}

/// Fruchterman-Reingold: repulsion k²/d between every pair, attraction d²/k
/// along edges (direction ignored), k = √(W·H/|V|).
pub fn spring_layout_with(
    net: &FlowNetwork,
    width: f64,
    height: f64,
    seed: u64,
    params: SpringParams,
) -> Result<LayoutResult, LayoutError> {
    check_box(width, height)?;
    let ids: Vec<NodeId> = net.nodes.iter().cloned().collect();
    let n = ids.len();
    if n == 0 {
        return Err(LayoutError::NoNodes);
    }
    if n == 1 {
        return Ok(BTreeMap::from([(
            ids[0].clone(),
            Position {
                x: width / 2.0,
                y: height / 2.0,
            },
        )]));
    }
    let index: BTreeMap<&NodeId, usize> = ids.iter().enumerate().map(|(i, id)| (id, i)).collect();
    let links: Vec<(usize, usize)> = net
        .edges
        .iter()
        .filter_map(|e| Some((*index.get(&e.tail)?, *index.get(&e.head)?)))
        .filter(|(u, v)| u != v)
        .collect();

    let k = (width * height / n as f64).sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pos: Vec<(f64, f64)> = (0..n)
        .map(|_| (rng.random_range(0.0..width), rng.random_range(0.0..height)))
        .collect();

    let t0 = params.initial_temperature * width;
    for step in 0..params.iterations {
        let temperature = t0 * (1.0 - step as f64 / params.iterations as f64);
        let mut disp = vec![(0.0_f64, 0.0_f64); n];
        for i in 0..n {
            for j in (i + 1)..n {
                let (dx, dy, d) = separation(pos[i], pos[j], i, j);
                let force = k * k / d;
                disp[i].0 += dx / d * force;
                disp[i].1 += dy / d * force;
                disp[j].0 -= dx / d * force;
                disp[j].1 -= dy / d * force;
            }
        }
        for &(u, v) in &links {
            let (dx, dy, d) = separation(pos[u], pos[v], u, v);
            let force = d * d / k;
            disp[u].0 -= dx / d * force;
            disp[u].1 -= dy / d * force;
            disp[v].0 += dx / d * force;
            disp[v].1 += dy / d * force;
        }
        for (p, (dx, dy)) in pos.iter_mut().zip(disp) {
            let len = (dx * dx + dy * dy).sqrt();
            if len > 0.0 {
                let step = len.min(temperature);
                p.0 = (p.0 + dx / len * step).clamp(0.0, width);
                p.1 = (p.1 + dy / len * step).clamp(0.0, height);
            }
        }
    }
    Ok(finish(ids, pos, width, height))
}

/// Vector from `b` to `a` and its length, never zero: coincident points are
/// split along a fixed direction chosen by index.
fn separation(a: (f64, f64), b: (f64, f64), i: usize, j: usize) -> (f64, f64, f64) {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    let d = (dx * dx + dy * dy).sqrt();
    if d > 1e-9 {
        (dx, dy, d)
    } else {
        let angle = (i * 31 + j * 17) as f64;
        (angle.cos() * 1e-3, angle.sin() * 1e-3, 1e-3)
    }
}

/// Nudges exact duplicates apart and packages the result.
fn finish(ids: Vec<NodeId>, mut pos: Vec<(f64, f64)>, width: f64, height: f64) -> LayoutResult {
    let eps = (width.min(height) * 1e-6).max(f64::MIN_POSITIVE);
    for i in 1..pos.len() {
        let mut attempt = 0u32;
        while pos[..i].iter().any(|&q| q == pos[i]) {
            attempt += 1;
            let (x, y) = pos[i];
            let dx = if x + eps <= width { eps } else { -eps };
            let dy = if attempt.is_multiple_of(2) {
                if y + eps <= height {
                    eps
                } else {
                    -eps
                }
            } else {
                0.0
            };
            pos[i] = (x + dx, y + dy);
        }
    }
    ids.into_iter()
        .zip(pos)
        .map(|(id, (x, y))| (id, Position { x, y }))
        .collect()
}

/// BFS distance from the source along original edges; unreachable nodes
/// go one layer past the deepest reachable one.
pub fn layers(net: &FlowNetwork) -> Result<BTreeMap<NodeId, usize>, LayoutError> {
    if !net.sink_reachable() {
        return Err(LayoutError::SinkUnreachable);
    }
    let source = net.source.clone().expect("reachable implies a source");
    let mut depth: BTreeMap<NodeId, usize> = BTreeMap::from([(source.clone(), 0)]);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        let du = depth[&u];
        for e in net.edges.iter().filter(|e| e.tail == u) {
            if !depth.contains_key(&e.head) {
                depth.insert(e.head.clone(), du + 1);
                queue.push_back(e.head.clone());
            }
        }
    }
    let trailing = depth.values().max().copied().unwrap_or(0) + 1;
    for id in &net.nodes {
        depth.entry(id.clone()).or_insert(trailing);
    }
    Ok(depth)
}

/// Columns by BFS layer, left to right; within a column nodes are ordered
/// by id from the top.
pub fn layered_layout(net: &FlowNetwork, width: f64, height: f64) -> Result<LayoutResult, LayoutError> {
    check_box(width, height)?;
    let depth = layers(net)?;
    let columns = depth.values().max().copied().unwrap_or(0) + 1;
    let mut by_layer: Vec<Vec<&NodeId>> = vec![Vec::new(); columns];
    // BTreeMap iteration already yields ids in ascending order.
    for (id, &l) in &depth {
        by_layer[l].push(id);
    }
    let mut out = BTreeMap::new();
    for (l, members) in by_layer.iter().enumerate() {
        let x = width * (l + 1) as f64 / (columns + 1) as f64;
        for (i, id) in members.iter().enumerate() {
            let y = height * (i + 1) as f64 / (members.len() + 1) as f64;
            out.insert((*id).clone(), Position { x, y });
        }
    }
    Ok(out)
}
