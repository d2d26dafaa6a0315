//! Small named networks used across tests, docs and the CLI examples.

use crate::network::{Capacity, FlowNetwork};

/// Diamond: s→a:3, s→b:2, a→b:1, a→t:2, b→t:3. Max flow 5.
pub fn diamond() -> FlowNetwork {
    FlowNetwork::from_edges(
        "s",
        "t",
        [
            ("s", "a", 3),
            ("s", "b", 2),
            ("a", "b", 1),
            ("a", "t", 2),
            ("b", "t", 3),
        ],
    )
}

/// Zigzag with a unit cross edge; max flow 2000, but alternating through the
/// cross edge takes 2000 augmentations.
pub fn zigzag() -> FlowNetwork {
    FlowNetwork::from_edges(
        "s",
        "t",
        [
            ("s", "a", 1000),
            ("s", "b", 1000),
            ("a", "b", 1),
            ("a", "t", 1000),
            ("b", "t", 1000),
        ],
    )
}

/// Left side A–D, right side E–H of the eight-node matching exercise.
pub const BIPARTITE_PAIRS: [(&str, &str); 10] = [
    ("A", "E"),
    ("A", "F"),
    ("A", "G"),
    ("A", "H"),
    ("B", "E"),
    ("B", "F"),
    ("B", "G"),
    ("C", "E"),
    ("C", "F"),
    ("D", "E"),
];

/// Unit-capacity flow network obtained from a bipartite graph: `s` feeds
/// every left node, every right node feeds `t`, pairs become left→right.
pub fn matching_network(left: &[&str], right: &[&str], pairs: &[(&str, &str)]) -> FlowNetwork {
    let unit: Capacity = 1;
    let edges = left
        .iter()
        .map(|&l| ("s", l, unit))
        .chain(pairs.iter().map(|&(l, r)| (l, r, unit)))
        .chain(right.iter().map(|&r| (r, "t", unit)));
    FlowNetwork::from_edges("s", "t", edges)
}

/// The eight-node matching exercise reduced to flow; it has a perfect
/// matching, so the max flow is 4.
pub fn bipartite() -> FlowNetwork {
    matching_network(&["A", "B", "C", "D"], &["E", "F", "G", "H"], &BIPARTITE_PAIRS)
}
