//! The relation file format and the DOT export.
//!
//! A relation file is line-oriented, LF-terminated:
//!
//! ```text
//! # optional comment lines anywhere
//! n 3
//! e 0 1
//! e 1 2
//! ```
//!
//! The first data line declares the vertex count; every following data
//! line is one edge. Duplicate edges are a parse error. Canonical
//! serialization emits no comments and sorts edges by `(u, v)`, so
//! parse-then-serialize is a fixpoint on canonical files.

use rigidrel::Relation;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected `n <count>` as the first data line")]
    MissingHeader { line: usize },

    #[error("line {line}: malformed `{kind}` line")]
    Malformed { line: usize, kind: &'static str },

    #[error("line {line}: unknown directive {found:?} (expected `n` or `e`)")]
    UnknownDirective { line: usize, found: String },

    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: usize, v: usize },

    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },

    #[error("line {line}: second `n` line")]
    DuplicateHeader { line: usize },

    #[error("no `n` line found")]
    Empty,
}

pub fn parse_relation(text: &str) -> Result<Relation, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens[0] {
            "n" => {
                if n.is_some() {
                    return Err(ParseError::DuplicateHeader { line });
                }
                let [_, count] = tokens[..] else {
                    return Err(ParseError::Malformed { line, kind: "n" });
                };
                n = Some(
                    count
                        .parse()
                        .map_err(|_| ParseError::Malformed { line, kind: "n" })?,
                );
            }
            "e" => {
                let Some(n) = n else {
                    return Err(ParseError::MissingHeader { line });
                };
                let [_, u, v] = tokens[..] else {
                    return Err(ParseError::Malformed { line, kind: "e" });
                };
                let parse = |t: &str| {
                    t.parse::<usize>()
                        .map_err(|_| ParseError::Malformed { line, kind: "e" })
                };
                let (u, v) = (parse(u)?, parse(v)?);
                for vertex in [u, v] {
                    if vertex >= n {
                        return Err(ParseError::VertexOutOfRange { line, vertex, n });
                    }
                }
                if edges.contains(&(u, v)) {
                    return Err(ParseError::DuplicateEdge { line, u, v });
                }
                edges.push((u, v));
            }
            other => {
                return Err(ParseError::UnknownDirective {
                    line,
                    found: other.to_owned(),
                })
            }
        }
    }
    let n = n.ok_or(ParseError::Empty)?;
    Ok(Relation::new(n, edges).expect("endpoints were range-checked"))
}

/// Canonical form: `n` line, then edges sorted by `(u, v)`, LF endings.
pub fn serialize_relation(r: &Relation) -> String {
    let mut out = format!("n {}\n", r.n());
    for (u, v) in r.edges() {
        out.push_str(&format!("e {u} {v}\n"));
    }
    out
}

/// DOT export: a directed graph with vertices labeled by index; loops
/// render as self-edges.
pub fn to_dot(r: &Relation) -> String {
    let mut out = String::from("digraph relation {\n");
    for v in 0..r.n() {
        out.push_str(&format!("    {v};\n"));
    }
    for (u, v) in r.edges() {
        out.push_str(&format!("    {u} -> {v};\n"));
    }
    out.push_str("}\n");
    out
}
