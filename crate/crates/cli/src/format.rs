//! The `plumbing v1` text format.
//!
//! ```text
//! plumbing v1
//! # name: kt
//! # note: Kodaira–Thurston divisor
//! v 1 g=1 k=0 a=5/1
//! v 2 g=1 k=0 a=7/1
//! e 1 2
//! ```
//!
//! Blank lines and other `#` comments are ignored. Vertex and edge lines
//! may appear in any order; a pair joined by several edges repeats its
//! edge line.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use plumbing_core::exact::{format_rational, is_positive, Rational};
use plumbing_core::graph::{DecoratedGraph, GraphError, VertexDecoration, VertexId};
use thiserror::Error;

pub const HEADER: &str = "plumbing v1";

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GraphDocument {
    pub graph: DecoratedGraph,
    pub name: String,
    /// One entry per `# note:` line.
    pub notes: Vec<String>,
}

impl GraphDocument {
    pub fn new(graph: DecoratedGraph) -> Self {
        GraphDocument {
            graph,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: unsupported header {found:?} (expected \"{HEADER}\")")]
    Header { line: usize, found: String },
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: loop at vertex {id}")]
    Loop { line: usize, id: u32 },
    #[error("line {line}: duplicate vertex {id}")]
    DuplicateVertex { line: usize, id: u32 },
    #[error("line {line}: edge names unknown vertex {id}")]
    UnknownVertex { line: usize, id: u32 },
    #[error("line {line}: area of vertex {id} must be positive")]
    NonPositiveArea { line: usize, id: u32 },
    #[error("line {line}: vertex {id} has negative (non-orientable) genus")]
    NonOrientable { line: usize, id: u32 },
}

impl ParseError {
    pub fn line(&self) -> usize {
        match *self {
            ParseError::Header { line, .. }
            | ParseError::Syntax { line, .. }
            | ParseError::Loop { line, .. }
            | ParseError::DuplicateVertex { line, .. }
            | ParseError::UnknownVertex { line, .. }
            | ParseError::NonPositiveArea { line, .. }
            | ParseError::NonOrientable { line, .. } => line,
        }
    }
}

/// Parses an input divisor graph; negative genera are rejected.
pub fn parse(text: &str) -> Result<GraphDocument, ParseError> {
    parse_with(text, false)
}

/// Like [`parse`] but accepts negative genera, as produced by RP²-absorption
/// in topological reductions.
pub fn parse_lenient(text: &str) -> Result<GraphDocument, ParseError> {
    parse_with(text, true)
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

fn parse_id(line: usize, s: &str) -> Result<u32, ParseError> {
    s.parse().map_err(|_| syntax(line, format!("bad vertex id {s:?}")))
}

fn field<'a>(line: usize, tok: Option<&'a str>, key: &str) -> Result<&'a str, ParseError> {
    tok.and_then(|t| t.strip_prefix(key))
        .and_then(|t| t.strip_prefix('='))
        .ok_or_else(|| syntax(line, format!("expected {key}=<value>")))
}

fn parse_with(text: &str, lenient: bool) -> Result<GraphDocument, ParseError> {
    let mut doc = GraphDocument::default();
    let mut vertices: BTreeMap<u32, (usize, VertexDecoration)> = BTreeMap::new();
    let mut edges: Vec<(usize, u32, u32)> = Vec::new();
    let mut seen_content = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        if let Some(comment) = trimmed.strip_prefix('#') {
            let comment = comment.trim_start();
            if let Some(name) = comment.strip_prefix("name:") {
                doc.name = name.trim().to_string();
            } else if let Some(note) = comment.strip_prefix("note:") {
                doc.notes.push(note.trim().to_string());
            }
            continue;
        }
        let mut toks = trimmed.split_whitespace();
        let head = toks.next().unwrap();
        match head {
            "plumbing" => {
                if seen_content || trimmed != HEADER {
                    return Err(ParseError::Header {
                        line,
                        found: trimmed.to_string(),
                    });
                }
            }
            "v" => {
                let id = parse_id(line, toks.next().ok_or_else(|| syntax(line, "missing vertex id"))?)?;
                let g = field(line, toks.next(), "g")?;
                let genus: i64 = g.parse().map_err(|_| syntax(line, format!("bad genus {g:?}")))?;
                let k = field(line, toks.next(), "k")?;
                let euler: i64 = k.parse().map_err(|_| syntax(line, format!("bad weight {k:?}")))?;
                let mut deco = VertexDecoration::new(genus, euler);
                if let Some(tok) = toks.next() {
                    let a = field(line, Some(tok), "a")?;
                    let area: Rational = a.parse().map_err(|_| syntax(line, format!("bad area {a:?}")))?;
                    if !is_positive(&area) {
                        return Err(ParseError::NonPositiveArea { line, id });
                    }
                    deco.area = Some(area);
                }
                if let Some(extra) = toks.next() {
                    return Err(syntax(line, format!("unexpected {extra:?}")));
                }
                if genus < 0 && !lenient {
                    return Err(ParseError::NonOrientable { line, id });
                }
                if vertices.insert(id, (line, deco)).is_some() {
                    return Err(ParseError::DuplicateVertex { line, id });
                }
            }
            "e" => {
                let a = parse_id(line, toks.next().ok_or_else(|| syntax(line, "missing edge end"))?)?;
                let b = parse_id(line, toks.next().ok_or_else(|| syntax(line, "missing edge end"))?)?;
                if let Some(extra) = toks.next() {
                    return Err(syntax(line, format!("unexpected {extra:?}")));
                }
                if a == b {
                    return Err(ParseError::Loop { line, id: a });
                }
                edges.push((line, a, b));
            }
            other => return Err(syntax(line, format!("unknown directive {other:?}"))),
        }
        seen_content = true;
    }

    for (id, (line, deco)) in vertices {
        doc.graph.add_vertex(VertexId(id), deco).map_err(|e| match e {
            GraphError::NonPositiveArea(_) => ParseError::NonPositiveArea { line, id },
            _ => ParseError::DuplicateVertex { line, id },
        })?;
    }
    for (line, a, b) in edges {
        for id in [a, b] {
            if !doc.graph.contains(VertexId(id)) {
                return Err(ParseError::UnknownVertex { line, id });
            }
        }
        doc.graph
            .add_edge(VertexId(a), VertexId(b))
            .map_err(|_| ParseError::Loop { line, id: a })?;
    }
    Ok(doc)
}

/// Canonical text: header, name, notes, vertices by id, edges in
/// lexicographic order with multiplicity.
pub fn serialize(doc: &GraphDocument) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    if !doc.name.is_empty() {
        let _ = writeln!(out, "# name: {}", doc.name);
    }
    for note in &doc.notes {
        let _ = writeln!(out, "# note: {note}");
    }
    for (v, d) in doc.graph.vertices() {
        let _ = write!(out, "v {} g={} k={}", v.0, d.genus, d.euler);
        if let Some(a) = &d.area {
            let _ = write!(out, " a={}", format_rational(a));
        }
        out.push('\n');
    }
    for (k, n) in doc.graph.edges() {
        let (a, b) = k.ends();
        for _ in 0..n {
            let _ = writeln!(out, "e {} {}", a.0, b.0);
        }
    }
    out
}

pub fn serialize_graph(g: &DecoratedGraph) -> String {
    serialize(&GraphDocument::new(g.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use plumbing_core::exact::int;

    #[test]
    fn kt_round_trip() {
        let doc = parse("v 1 g=1 k=0\nv 2 g=1 k=0\ne 1 2\n").unwrap();
        assert_eq!(doc.graph.vertex_count(), 2);
        assert_eq!(doc.graph.edge_count(), 1);
        let text = serialize(&doc);
        assert_eq!(text, "plumbing v1\nv 1 g=1 k=0\nv 2 g=1 k=0\ne 1 2\n");
        assert_eq!(parse(&text).unwrap(), doc);
    }

    #[test]
    fn empty_input() {
        let doc = parse("").unwrap();
        assert!(doc.graph.is_empty());
        assert_eq!(serialize(&doc), "plumbing v1\n");
    }

    #[test]
    fn areas_print_with_denominator() {
        let doc = parse("plumbing v1\nv 1 g=1 k=0 a=5\nv 2 g=1 k=0 a=14/2\ne 2 1\n").unwrap();
        assert_eq!(doc.graph.vertex(VertexId(2)).unwrap().area, Some(int(7)));
        let text = serialize(&doc);
        assert!(text.contains("v 1 g=1 k=0 a=5/1\n"));
        assert!(text.contains("v 2 g=1 k=0 a=7/1\n"));
    }

    #[test]
    fn name_notes_and_multi_edges_survive() {
        let text = "plumbing v1\n# name: pair\n# note: first\n# note: second\nv 1 g=0 k=1\nv 2 g=0 k=2\ne 1 2\ne 1 2\n";
        let doc = parse(text).unwrap();
        assert_eq!(doc.name, "pair");
        assert_eq!(doc.notes, vec!["first", "second"]);
        assert_eq!(doc.graph.multiplicity(VertexId(1), VertexId(2)), 2);
        assert_eq!(serialize(&doc), text);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse("v 1 g=0 k=-1\ne 1 1\n"), Err(ParseError::Loop { line: 2, id: 1 }));
        assert_eq!(
            parse("v 1 g=0 k=0\n\nv 1 g=0 k=1\n"),
            Err(ParseError::DuplicateVertex { line: 3, id: 1 })
        );
        assert_eq!(
            parse("v 1 g=0 k=0 a=0/1\n"),
            Err(ParseError::NonPositiveArea { line: 1, id: 1 })
        );
        assert_eq!(
            parse("v 1 g=0 k=0\ne 1 2\n"),
            Err(ParseError::UnknownVertex { line: 2, id: 2 })
        );
        assert_eq!(parse("v 1 g=-1 k=0\n").unwrap_err().line(), 1);
        assert!(parse_lenient("v 1 g=-1 k=0\n").is_ok());
        assert!(matches!(
            parse("plumbing v2\n"),
            Err(ParseError::Header { line: 1, .. })
        ));
        assert!(matches!(
            parse("v 1 g=x k=0\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse("v 1 k=0 g=0\n"),
            Err(ParseError::Syntax { line: 1, .. })
        ));
        assert!(matches!(parse("w 1\n"), Err(ParseError::Syntax { line: 1, .. })));
    }
}
