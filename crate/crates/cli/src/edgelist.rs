//! Whitespace-separated edge lists.
//!
//! ```text
//! # comment
//! <u> <v> [<w>]
//! ```
//!
//! Labels are arbitrary tokens, numbered in order of first appearance. A
//! missing weight is 1. Vertices without edges cannot be written down, so a
//! graph round-trips only when every vertex has an edge.

use std::collections::HashMap;
use std::fmt::Write;

use mucheeger_core::Graph;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("line {line}: expected `<u> <v> [<w>]`, got {content:?}")]
    Malformed { line: usize, content: String },
    #[error("line {line}: weight {token:?} is not a positive finite number")]
    BadWeight { line: usize, token: String },
    #[error("line {line}: self-loop on {label:?}")]
    SelfLoop { line: usize, label: String },
    #[error("no edges")]
    Empty,
    #[error("{0}")]
    Graph(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedGraph {
    pub graph: Graph,
    /// `labels[v]` is the file token of vertex `v`.
    pub labels: Vec<String>,
}

pub fn parse_edge_list(text: &str) -> Result<ParsedGraph, ParseError> {
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut labels = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        let (u, v, w) = match tokens[..] {
            [u, v] => (u, v, 1.0),
            [u, v, w] => {
                let weight: f64 = w.parse().map_err(|_| ParseError::BadWeight {
                    line,
                    token: w.to_string(),
                })?;
                if !(weight > 0.0 && weight.is_finite()) {
                    return Err(ParseError::BadWeight {
                        line,
                        token: w.to_string(),
                    });
                }
                (u, v, weight)
            }
            _ => {
                return Err(ParseError::Malformed {
                    line,
                    content: raw.to_string(),
                })
            }
        };
        if u == v {
            return Err(ParseError::SelfLoop {
                line,
                label: u.to_string(),
            });
        }
        let a = intern(&mut ids, &mut labels, u);
        let b = intern(&mut ids, &mut labels, v);
        edges.push((a, b, w));
    }
    if edges.is_empty() {
        return Err(ParseError::Empty);
    }
    // Merged weights can still overflow.
    let graph = Graph::new(labels.len(), &edges).map_err(|e| ParseError::Graph(e.to_string()))?;
    Ok(ParsedGraph { graph, labels })
}

fn intern<'t>(
    ids: &mut HashMap<&'t str, usize>,
    labels: &mut Vec<String>,
    label: &'t str,
) -> usize {
    let next = labels.len();
    *ids.entry(label).or_insert_with(|| {
        labels.push(label.to_string());
        next
    })
}

/// One `u v w` line per merged edge in canonical order. Vertex ids are
/// written unless `labels` is given.
pub fn serialize_edge_list(g: &Graph, labels: Option<&[String]>) -> String {
    let mut out = String::new();
    for e in g.edges() {
        match labels {
            Some(l) => writeln!(out, "{} {} {}", l[e.u], l[e.v], e.w),
            None => writeln!(out, "{} {} {}", e.u, e.v, e.w),
        }
        .expect("writing to a String cannot fail");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_in_first_appearance_order() {
        let p = parse_edge_list("# demo\nb a 2\n\na c\n").unwrap();
        assert_eq!(p.labels, vec!["b", "a", "c"]);
        assert_eq!(p.graph.degrees(), &[2.0, 3.0, 1.0]);
    }

    #[test]
    fn duplicates_merge() {
        let p = parse_edge_list("0 1 1\n1 0 2\n").unwrap();
        assert_eq!(p.graph.m(), 1);
        assert_eq!(p.graph.edges()[0].w, 3.0);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            parse_edge_list("0 1\n0 1 x\n"),
            Err(ParseError::BadWeight {
                line: 2,
                token: "x".into()
            })
        );
        assert_eq!(
            parse_edge_list("0 1\n# c\n2 2\n"),
            Err(ParseError::SelfLoop {
                line: 3,
                label: "2".into()
            })
        );
        assert!(matches!(
            parse_edge_list("0 1 1 1\n"),
            Err(ParseError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("0\n"),
            Err(ParseError::Malformed { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("0 1 -1\n"),
            Err(ParseError::BadWeight { .. })
        ));
        assert!(matches!(
            parse_edge_list("0 1 inf\n"),
            Err(ParseError::BadWeight { .. })
        ));
        assert_eq!(parse_edge_list("# nothing\n"), Err(ParseError::Empty));
    }

    #[test]
    fn canonical_text_round_trips() {
        let text = "0 1 1\n0 2 0.5\n1 2 3\n2 3 1\n";
        let p = parse_edge_list(text).unwrap();
        assert_eq!(serialize_edge_list(&p.graph, None), text);
        assert_eq!(serialize_edge_list(&p.graph, Some(&p.labels)), text);
    }
}
