//! Core graph data model.
//!
//! Vertices are dense `usize` identifiers inside an *id space* `0..n`. A
//! [`Graph`] may occupy only a subset of its id space, which is how member
//! graphs of a list-mode [`GraphFamily`] are represented. Colors (and member
//! indices) are 1-based throughout.

mod coloring;
pub mod dot;
mod family;
pub mod io;
mod multigraph;
mod translate;

pub use coloring::{verify_adapted, verify_cooperative, CooperativeColoring, Violation};
pub use family::{GraphFamily, Member, Mode};
pub use multigraph::{ColoredEdge, EdgeColoredMultigraph};
pub use translate::{
    adapted_to_family, family_to_adapted, family_to_transversal, Block, PartitionedGraph,
    TransversalGraph,
};

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type Vertex = usize;
/// A color, equivalently a 1-based member index.
pub type Color = usize;

/// A simple undirected graph on a subset of the id space `0..id_space`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    present: Vec<bool>,
    adj: Vec<Vec<Vertex>>,
    vertex_count: usize,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph on `vertices` (a subset of `0..id_space`). Duplicate
    /// edges are collapsed.
    pub fn new(
        id_space: usize,
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self> {
        let mut present = vec![false; id_space];
        for v in vertices {
            if v >= id_space {
                return Err(Error::VertexOutOfRange { vertex: v, id_space });
            }
            present[v] = true;
        }
        let mut adj = vec![Vec::new(); id_space];
        for (u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if u >= id_space || v >= id_space || !present[u] || !present[v] {
                return Err(Error::DanglingEdge(u, v));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut twice = 0;
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        let vertex_count = present.iter().filter(|&&p| p).count();
        Ok(Graph { present, adj, vertex_count, edge_count: twice / 2 })
    }

    /// A graph whose vertex set is the whole id space `0..n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        Graph::new(n, 0..n, edges)
    }

    pub fn empty(n: usize) -> Self {
        Graph::new(n, 0..n, std::iter::empty()).expect("edgeless graph is valid")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph is valid")
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).expect("path is valid")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).expect("cycle is valid")
    }

    /// `K_{1,leaves}` with center 0.
    pub fn star(leaves: usize) -> Self {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is valid")
    }

    pub fn id_space(&self) -> usize {
        self.present.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.present.get(v).copied().unwrap_or(false)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.present.iter().enumerate().filter(|(_, &p)| p).map(|(v, _)| v)
    }

    /// Sorted neighbor list. Empty for vertices outside the graph.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        self.adj.get(v).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.neighbors(v).len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Maximum number of incident edges; 0 for edgeless graphs.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// True iff the graph is acyclic and every component has at most one
    /// vertex of degree at least 2.
    pub fn is_star_forest(&self) -> bool {
        self.components().iter().all(|comp| {
            let edges: usize = comp.iter().map(|&v| self.degree(v)).sum::<usize>() / 2;
            let hubs = comp.iter().filter(|&&v| self.degree(v) >= 2).count();
            edges + 1 == comp.len() && hubs <= 1
        })
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.id_space()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on the vertices of `self` selected by `keep`, in the
    /// same id space.
    pub fn induced(&self, keep: impl Fn(Vertex) -> bool) -> Graph {
        let vertices: Vec<Vertex> = self.vertices().filter(|&v| keep(v)).collect();
        let mut mask = vec![false; self.id_space()];
        for &v in &vertices {
            mask[v] = true;
        }
        let edges = self.edges().filter(|&(u, v)| mask[u] && mask[v]);
        Graph::new(self.id_space(), vertices.iter().copied(), edges.collect::<Vec<_>>())
            .expect("induced subgraph is valid")
    }

    pub fn without_vertex(&self, x: Vertex) -> Graph {
        self.induced(|v| v != x)
    }

    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Graph> {
        Graph::new(self.id_space(), self.vertices(), self.edges().chain(std::iter::once((u, v))))
    }

    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Graph {
        let (a, b) = (u.min(v), u.max(v));
        Graph::new(self.id_space(), self.vertices(), self.edges().filter(|&e| e != (a, b)))
            .expect("edge deletion keeps the graph valid")
    }

    /// Renumbers the present vertices densely (ascending order). Returns the
    /// compacted graph and the map from new ids back to old ids.
    pub fn compact(&self) -> (Graph, Vec<Vertex>) {
        let back: Vec<Vertex> = self.vertices().collect();
        let mut fwd = vec![usize::MAX; self.id_space()];
        for (i, &v) in back.iter().enumerate() {
            fwd[v] = i;
        }
        let edges: Vec<_> = self.edges().map(|(u, v)| (fwd[u], fwd[v])).collect();
        (Graph::from_edges(back.len(), edges).expect("compaction is valid"), back)
    }

    /// True iff every vertex and edge of `self` is present in `other`.
    pub fn is_subgraph_of(&self, other: &Graph) -> bool {
        self.vertices().all(|v| other.contains(v)) && self.edges().all(|(u, v)| other.has_edge(u, v))
    }
}
