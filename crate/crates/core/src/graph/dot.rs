//! Graphviz export.

use std::fmt::Write as _;

use super::{CooperativeColoring, EdgeColoredMultigraph, GraphFamily};

const PALETTE: [&str; 10] = [
    "red", "blue", "forestgreen", "orange", "purple", "brown", "deeppink", "gold", "cyan4", "gray40",
];

fn hue(color: usize) -> &'static str {
    PALETTE[(color - 1) % PALETTE.len()]
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The union multigraph of a family: one edge per (member, edge), colored and
/// labeled by member index. Vertices are filled by `coloring` when given.
pub fn family_to_dot(family: &GraphFamily, coloring: Option<&CooperativeColoring>) -> String {
    let mut out = String::from("graph family {\n  node [style=filled, fillcolor=white];\n");
    for v in 0..family.universe_size() {
        let _ = write!(out, "  {}", quote(family.label(v)));
        if let Some(c) = coloring.and_then(|c| c.get(v)) {
            let _ = write!(out, " [fillcolor={}, xlabel=\"{c}\"]", hue(c));
        }
        out.push_str(";\n");
    }
    for (i, g) in family.graphs().enumerate() {
        for (u, v) in g.edges() {
            let _ = writeln!(
                out,
                "  {} -- {} [color={}, label=\"{}\"];",
                quote(family.label(u)),
                quote(family.label(v)),
                hue(i + 1),
                i + 1
            );
        }
    }
    out.push_str("}\n");
    out
}

/// An edge-colored multigraph with numeric vertex names.
pub fn multigraph_to_dot(m: &EdgeColoredMultigraph, coloring: Option<&CooperativeColoring>) -> String {
    let mut out = String::from("graph colored {\n  node [style=filled, fillcolor=white];\n");
    for v in 0..m.vertex_count() {
        let _ = write!(out, "  {v}");
        if let Some(c) = coloring.and_then(|c| c.get(v)) {
            let _ = write!(out, " [fillcolor={}, xlabel=\"{c}\"]", hue(c));
        }
        out.push_str(";\n");
    }
    for e in m.edges() {
        let _ = writeln!(out, "  {} -- {} [color={}, label=\"{}\"];", e.u, e.v, hue(e.color), e.color);
    }
    out.push_str("}\n");
    out
}
