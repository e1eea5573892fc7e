//! Graphviz export. Nodes are labelled with their decoration `(g,k)`;
//! parallel edges are written once per copy.

use std::fmt::Write as _;

use crate::format::GraphDocument;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn to_dot(doc: &GraphDocument) -> String {
    let mut out = String::from("graph plumbing {\n");
    if !doc.name.is_empty() {
        let _ = writeln!(out, "  label=\"{}\";", escape(&doc.name));
    }
    for (v, d) in doc.graph.vertices() {
        let _ = writeln!(out, "  v{} [label=\"({},{})\"];", v.0, d.genus, d.euler);
    }
    for (k, n) in doc.graph.edges() {
        let (a, b) = k.ends();
        for _ in 0..n {
            let _ = writeln!(out, "  v{} -- v{};", a.0, b.0);
        }
    }
    out.push_str("}\n");
    out
}
