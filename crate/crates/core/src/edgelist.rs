//! Line-oriented edgelist files.
//!
//! ```text
//! # comment
//! source s
//! sink t
//! node lonely          # an isolated node with no position
//! pos a 120.5 80
//! s a 3
//! ```
//!
//! Lines are dispatched on their token count: three tokens are an edge
//! record `<tail> <head> <capacity>`, two tokens a `source`/`sink`/`node`
//! directive, four tokens a `pos` directive. Nodes are declared by mention.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::network::{Edge, FlowNetwork, NetworkViolation, NodeId, NodeIdError, Position};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Error)]
#[error("{kind} at line {line}")]
#[serde(rename_all = "camelCase")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Error)]
#[serde(tag = "error", rename_all = "snake_case", rename_all_fields = "camelCase")]
pub enum ParseErrorKind {
    #[error("malformed record {text:?}")]
    MalformedRecord { text: String },
    #[error("unknown directive {name:?}")]
    UnknownDirective { name: String },
    #[error("invalid node id {token:?}: {reason}")]
    InvalidNodeId { token: String, reason: String },
    #[error("non-integer capacity {token:?}")]
    NonIntegerCapacity { token: String },
    #[error("negative capacity {token}")]
    NegativeCapacity { token: String },
    #[error("invalid coordinate {token:?}")]
    InvalidCoordinate { token: String },
    #[error("duplicate edge {tail}→{head}")]
    DuplicateEdge { tail: String, head: String },
    #[error("duplicate {directive} directive")]
    DuplicateDirective { directive: String },
    #[error("duplicate position for {node}")]
    DuplicatePosition { node: String },
    #[error("{violation}")]
    Structure { violation: NetworkViolation },
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn node_id(line: usize, token: &str) -> Result<NodeId, ParseError> {
    NodeId::new(token).map_err(|e: NodeIdError| {
        err(
            line,
            ParseErrorKind::InvalidNodeId {
                token: token.to_string(),
                reason: e.to_string(),
            },
        )
    })
}

fn coordinate(line: usize, token: &str) -> Result<f64, ParseError> {
    token.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(|| {
        err(
            line,
            ParseErrorKind::InvalidCoordinate {
                token: token.to_string(),
            },
        )
    })
}

/// Parses a possibly incomplete network: grammar and per-edge structure are
/// checked, but a missing `source` or `sink` is allowed.
pub fn parse_edgelist_draft(text: &str) -> Result<FlowNetwork, Vec<ParseError>> {
    let mut net = FlowNetwork::new();
    let mut errors = Vec::new();
    let mut source_line = None;
    let mut sink_line = None;
    let mut edge_lines = Vec::new();

    for (i, raw) in text.split('\n').enumerate() {
        let line = i + 1;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let result = match tokens.as_slice() {
            [tail, head, cap] => parse_edge(line, tail, head, cap).map(|edge| {
                net.nodes.insert(edge.tail.clone());
                net.nodes.insert(edge.head.clone());
                net.edges.push(edge);
                edge_lines.push(line);
            }),
            [directive, id] => match *directive {
                "source" | "sink" => {
                    let (slot, seen) = if *directive == "source" {
                        (&mut net.source, &mut source_line)
                    } else {
                        (&mut net.sink, &mut sink_line)
                    };
                    if seen.is_some() {
                        Err(err(
                            line,
                            ParseErrorKind::DuplicateDirective {
                                directive: directive.to_string(),
                            },
                        ))
                    } else {
                        node_id(line, id).map(|id| {
                            net.nodes.insert(id.clone());
                            *slot = Some(id);
                            *seen = Some(line);
                        })
                    }
                }
                "node" => node_id(line, id).map(|id| {
                    net.nodes.insert(id);
                }),
                other => Err(err(
                    line,
                    ParseErrorKind::UnknownDirective {
                        name: other.to_string(),
                    },
                )),
            },
            ["pos", id, x, y] => node_id(line, id).and_then(|id| {
                let position = Position {
                    x: coordinate(line, x)?,
                    y: coordinate(line, y)?,
                };
                if net.positions.contains_key(&id) {
                    return Err(err(line, ParseErrorKind::DuplicatePosition { node: id.to_string() }));
                }
                net.nodes.insert(id.clone());
                net.positions.insert(id, position);
                Ok(())
            }),
            [other, _, _, _] => Err(err(
                line,
                ParseErrorKind::UnknownDirective {
                    name: other.to_string(),
                },
            )),
            _ => Err(err(
                line,
                ParseErrorKind::MalformedRecord {
                    text: content.to_string(),
                },
            )),
        };
        if let Err(e) = result {
            errors.push(e);
        }
    }

    // Per-edge structure, reported at the offending edge line.
    let mut seen = BTreeSet::new();
    for (edge, &line) in net.edges.iter().zip(&edge_lines) {
        if edge.tail == edge.head {
            errors.push(err(
                line,
                ParseErrorKind::Structure {
                    violation: NetworkViolation::SelfLoop {
                        node: edge.tail.clone(),
                    },
                },
            ));
        }
        if !seen.insert((&edge.tail, &edge.head)) {
            errors.push(err(
                line,
                ParseErrorKind::DuplicateEdge {
                    tail: edge.tail.to_string(),
                    head: edge.head.to_string(),
                },
            ));
        } else if seen.contains(&(&edge.head, &edge.tail)) && edge.tail != edge.head {
            let (a, b) = if edge.tail < edge.head {
                (&edge.tail, &edge.head)
            } else {
                (&edge.head, &edge.tail)
            };
            errors.push(err(
                line,
                ParseErrorKind::Structure {
                    violation: NetworkViolation::AntiParallelPair {
                        a: a.clone(),
                        b: b.clone(),
                    },
                },
            ));
        }
    }
    if let (Some(s), Some(t), Some(line)) = (&net.source, &net.sink, source_line.max(sink_line)) {
        if s == t {
            errors.push(err(
                line,
                ParseErrorKind::Structure {
                    violation: NetworkViolation::SourceIsSink { node: s.clone() },
                },
            ));
        }
    }

    if errors.is_empty() {
        Ok(net)
    } else {
        errors.sort_by_key(|e| e.line);
        Err(errors)
    }
}

fn parse_edge(line: usize, tail: &str, head: &str, cap: &str) -> Result<Edge, ParseError> {
    let tail = node_id(line, tail)?;
    let head = node_id(line, head)?;
    let capacity = match cap.parse::<i64>() {
        Ok(c) if c < 0 => return Err(err(line, ParseErrorKind::NegativeCapacity { token: cap.to_string() })),
        Ok(c) => c,
        Err(_) => return Err(err(line, ParseErrorKind::NonIntegerCapacity { token: cap.to_string() })),
    };
    Ok(Edge { tail, head, capacity })
}

/// Parses a complete network. A missing `source` or `sink` is reported
/// against the line after the last one.
pub fn parse_edgelist(text: &str) -> Result<FlowNetwork, Vec<ParseError>> {
    let net = parse_edgelist_draft(text)?;
    let end = text.split('\n').count() + usize::from(!text.is_empty() && !text.ends_with('\n'));
    let mut errors = Vec::new();
    if net.source.is_none() {
        errors.push(err(
            end,
            ParseErrorKind::Structure {
                violation: NetworkViolation::MissingSource,
            },
        ));
    }
    if net.sink.is_none() {
        errors.push(err(
            end,
            ParseErrorKind::Structure {
                violation: NetworkViolation::MissingSink,
            },
        ));
    }
    debug_assert!(!errors.is_empty() || net.validate().is_ok());
    if errors.is_empty() {
        Ok(net)
    } else {
        Err(errors)
    }
}

/// Canonical text: `source`, `sink`, `node` lines for isolated unplaced
/// nodes, `pos` lines by id, then edges by (tail, head).
pub fn serialize_edgelist(net: &FlowNetwork) -> String {
    let mut out = String::new();
    // Writing to a String cannot fail.
    let _ = write_edgelist(&mut out, net);
    out
}

fn write_edgelist(out: &mut String, net: &FlowNetwork) -> fmt::Result {
    if let Some(s) = &net.source {
        writeln!(out, "source {s}")?;
    }
    if let Some(t) = &net.sink {
        writeln!(out, "sink {t}")?;
    }
    let mentioned: BTreeSet<&NodeId> = net
        .edges
        .iter()
        .flat_map(|e| [&e.tail, &e.head])
        .chain(net.source.iter())
        .chain(net.sink.iter())
        .chain(net.positions.keys())
        .collect();
    for id in net.nodes.iter().filter(|id| !mentioned.contains(id)) {
        writeln!(out, "node {id}")?;
    }
    for (id, p) in &net.positions {
        writeln!(out, "pos {id} {} {}", p.x, p.y)?;
    }
    let mut edges: Vec<&Edge> = net.edges.iter().collect();
    edges.sort_by(|a, b| (&a.tail, &a.head).cmp(&(&b.tail, &b.head)));
    for e in edges {
        writeln!(out, "{} {} {}", e.tail, e.head, e.capacity)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::diamond;
    use crate::network::node;

    #[test]
    fn minimal_document() {
        let net = parse_edgelist("source s\nsink t\ns t 5\n").unwrap();
        assert_eq!(net, FlowNetwork::from_edges("s", "t", [("s", "t", 5)]));
    }

    #[test]
    fn duplicate_edge_is_line_numbered() {
        let errs = parse_edgelist("s t 5\ns t 7\n").unwrap_err();
        assert_eq!(errs[0].to_string(), "duplicate edge s→t at line 2");
    }

    #[test]
    fn positions_are_read() {
        let text = "source s\nsink t\npos a 120.5 80.0\ns a 3\ns b 2\na b 1\na t 2\nb t 3\n";
        let net = parse_edgelist(text).unwrap();
        assert_eq!(net.positions[&node("a")], Position { x: 120.5, y: 80.0 });
        assert_eq!(net.canonical(), diamond().canonical().tap_pos("a", 120.5, 80.0));
    }

    trait TapPos {
        fn tap_pos(self, id: &str, x: f64, y: f64) -> Self;
    }
    impl TapPos for FlowNetwork {
        fn tap_pos(mut self, id: &str, x: f64, y: f64) -> Self {
            self.positions.insert(node(id), Position { x, y });
            self
        }
    }

    #[test]
    fn error_kinds() {
        let cases = [
            ("s t 2.5\n", "non-integer capacity \"2.5\" at line 1"),
            ("s t -1\n", "negative capacity -1 at line 1"),
            ("source s\nsource a\n", "duplicate source directive at line 2"),
            ("sink t\n\nsink t\n", "duplicate sink directive at line 3"),
            ("weight 3\n", "unknown directive \"weight\" at line 1"),
            ("a b c d e\n", "malformed record \"a b c d e\" at line 1"),
            ("lonely\n", "malformed record \"lonely\" at line 1"),
            ("pos a x 1\n", "invalid coordinate \"x\" at line 1"),
            ("pos a inf 1\n", "invalid coordinate \"inf\" at line 1"),
            ("a a 1\n", "self-loop at a at line 1"),
            ("a b 1\nb a 1\n", "anti-parallel pair (a,b) at line 2"),
        ];
        for (text, expected) in cases {
            let errs = parse_edgelist_draft(text).unwrap_err();
            assert_eq!(errs[0].to_string(), expected, "{text:?}");
        }
        let errs = parse_edgelist("s t 1\n").unwrap_err();
        assert_eq!(errs[0].to_string(), "missing source at line 2");
    }

    #[test]
    fn no_pos_lines_without_positions() {
        let text = serialize_edgelist(&diamond());
        assert_eq!(text, "source s\nsink t\na b 1\na t 2\nb t 3\ns a 3\ns b 2\n");
        assert!(!text.contains("pos"));
    }

    #[test]
    fn round_trip_and_fixpoint() {
        let mut d = diamond();
        d.positions.insert(node("b"), Position { x: -3.25, y: 1e-3 });
        d.nodes.insert(node("island"));
        let text = serialize_edgelist(&d);
        let back = parse_edgelist(&text).unwrap();
        assert_eq!(back, d.canonical());
        assert_eq!(serialize_edgelist(&back), text);
    }

    #[test]
    fn empty_network_serializes_to_nothing() {
        assert_eq!(serialize_edgelist(&FlowNetwork::new()), "");
        assert_eq!(parse_edgelist_draft(""), Ok(FlowNetwork::new()));
    }

    #[test]
    fn comments_and_crlf() {
        let net = parse_edgelist("# demo\r\n\r\nsource s\r\nsink t\r\n  s t 5  # trailing? no\r\n");
        // A trailing comment makes the edge record six tokens long.
        assert!(net.is_err());
        let net = parse_edgelist("# demo\r\n\r\nsource s\r\nsink t\r\ns t 5\r\n").unwrap();
        assert_eq!(net.edges.len(), 1);
    }
}
