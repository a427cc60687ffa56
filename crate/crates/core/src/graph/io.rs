//! Plain edge-list format: a header line `n m`, then `m` lines `u v`
//! (0-indexed). Loops are implicit and therefore rejected.

use std::fmt::Write as _;

use super::{Graph, GraphError};

pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, header) = lines.next().ok_or(GraphError::Parse {
        line: 1,
        reason: "missing header".into(),
    })?;
    let [n, m] = parse_pair(line, header)?;
    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines {
        if edges.len() == m {
            return Err(GraphError::Parse {
                line,
                reason: format!("more than the {m} declared edges"),
            });
        }
        let [u, v] = parse_pair(line, body)?;
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(GraphError::Parse {
            line: text.lines().count(),
            reason: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, edges)
}

fn parse_pair(line: usize, body: &str) -> Result<[usize; 2], GraphError> {
    let mut it = body.split_ascii_whitespace();
    let mut next = || -> Result<usize, GraphError> {
        let tok = it.next().ok_or_else(|| GraphError::Parse {
            line,
            reason: "expected two integers".into(),
        })?;
        tok.parse().map_err(|_| GraphError::Parse {
            line,
            reason: format!("`{tok}` is not a non-negative integer"),
        })
    };
    let pair = [next()?, next()?];
    if it.next().is_some() {
        return Err(GraphError::Parse {
            line,
            reason: "trailing tokens".into(),
        });
    }
    Ok(pair)
}

/// Canonical form: edges sorted `(u < v)` lexicographically, lines joined by
/// `\n`, no trailing newline.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = format!("{} {}", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = write!(out, "\n{u} {v}");
    }
    out
}
