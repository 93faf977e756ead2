//! Canonical instance files.
//!
//! An instance is a JSON document:
//!
//! ```text
//! {
//!   "version": 1,
//!   "mode": "common",
//!   "vertex_labels": ["a","b"],
//!   "members": [
//!     {
//!       "name": "G1",
//!       "vertices": ["a","b"],
//!       "edges": [["a","b"]]
//!     }
//!   ]
//! }
//! ```
//!
//! `vertex_labels` fixes the vertex numbering (label `i` is vertex `i`).
//! The canonical writer emits members in index order and sorts member
//! vertices, edge endpoints and edge lists lexicographically by label, so equal
//! families serialize to identical bytes.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Color, CooperativeColoring, Graph, GraphFamily, Member, Mode, Vertex};
use crate::error::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Serialize, Deserialize)]
struct InstanceDoc {
    version: u32,
    mode: Mode,
    vertex_labels: Vec<String>,
    members: Vec<MemberDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct MemberDoc {
    name: String,
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string(value).expect("string data always serializes")
}

/// Canonical serialization of a family.
pub fn write_instance(family: &GraphFamily) -> String {
    let labels = family.labels();
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"version\": {FORMAT_VERSION},");
    let _ = writeln!(out, "  \"mode\": {},", json(&family.mode()));
    let _ = writeln!(out, "  \"vertex_labels\": {},", json(labels));
    out.push_str("  \"members\": [");
    for (i, member) in family.members().iter().enumerate() {
        let mut vertices: Vec<&str> = member.graph.vertices().map(|v| labels[v].as_str()).collect();
        vertices.sort_unstable();
        let mut edges: Vec<(&str, &str)> = member
            .graph
            .edges()
            .map(|(u, v)| {
                let (a, b) = (labels[u].as_str(), labels[v].as_str());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        edges.sort_unstable();
        out.push_str(if i == 0 { "\n" } else { ",\n" });
        out.push_str("    {\n");
        let _ = writeln!(out, "      \"name\": {},", json(&member.name));
        let _ = writeln!(out, "      \"vertices\": {},", json(&vertices));
        let _ = writeln!(out, "      \"edges\": {}", json(&edges));
        out.push_str("    }");
    }
    if family.k() > 0 {
        out.push('\n');
        out.push_str("  ");
    }
    out.push_str("]\n}\n");
    out
}

/// Parses an instance document. Labels are mapped to vertex ids in the order
/// of `vertex_labels`.
pub fn parse_instance(text: &str) -> Result<GraphFamily> {
    let doc: InstanceDoc = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    if doc.version != FORMAT_VERSION {
        return Err(Error::Parse(format!("unsupported instance version {}", doc.version)));
    }
    let n = doc.vertex_labels.len();
    let index = label_index(&doc.vertex_labels)?;
    let lookup = |label: &str| {
        index
            .get(label)
            .copied()
            .ok_or_else(|| Error::Parse(format!("unknown vertex label {label:?}")))
    };
    let mut members = Vec::with_capacity(doc.members.len());
    for m in &doc.members {
        let vertices = m.vertices.iter().map(|l| lookup(l)).collect::<Result<Vec<_>>>()?;
        let edges = m
            .edges
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        members.push(Member { name: m.name.clone(), graph: Graph::new(n, vertices, edges)? });
    }
    if members.is_empty() {
        return Err(Error::InvalidFamily("an instance needs at least one member".into()));
    }
    GraphFamily::new(doc.vertex_labels, doc.mode, members)
}

fn label_index(labels: &[String]) -> Result<HashMap<&str, Vertex>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (v, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), v).is_some() {
            return Err(Error::Parse(format!("duplicate vertex label {l:?}")));
        }
    }
    Ok(index)
}

/// Coloring as a label -> color map (sorted by label). Unassigned vertices
/// are omitted.
pub fn coloring_to_map(family: &GraphFamily, coloring: &CooperativeColoring) -> BTreeMap<String, Color> {
    (0..coloring.len().min(family.universe_size()))
        .filter_map(|v| coloring.get(v).map(|c| (family.label(v).to_string(), c)))
        .collect()
}

pub fn write_coloring(family: &GraphFamily, coloring: &CooperativeColoring) -> String {
    let map = coloring_to_map(family, coloring);
    let mut s = serde_json::to_string_pretty(&map).expect("map serializes");
    s.push('\n');
    s
}

/// Parses a label -> color JSON object. Vertices missing from the map stay
/// unassigned.
pub fn parse_coloring(family: &GraphFamily, text: &str) -> Result<CooperativeColoring> {
    let map: BTreeMap<String, Color> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let index = label_index(family.labels())?;
    let mut coloring = CooperativeColoring::unassigned(family.universe_size());
    for (label, color) in map {
        let v = *index
            .get(label.as_str())
            .ok_or_else(|| Error::Parse(format!("unknown vertex label {label:?}")))?;
        coloring.set(v, Some(color));
    }
    Ok(coloring)
}

/// Parses a parts file: a JSON array of label arrays.
pub fn parse_parts(labels: &[String], text: &str) -> Result<Vec<Vec<Vertex>>> {
    let parts: Vec<Vec<String>> =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let index = label_index(labels)?;
    parts
        .iter()
        .map(|part| {
            part.iter()
                .map(|l| {
                    index
                        .get(l.as_str())
                        .copied()
                        .ok_or_else(|| Error::Parse(format!("unknown vertex label {l:?}")))
                })
                .collect()
        })
        .collect()
}
