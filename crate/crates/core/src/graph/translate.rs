//! Translations between the family, adapted-coloring and
//! independent-transversal views of one instance.

use super::family::default_labels;
use super::{Color, CooperativeColoring, EdgeColoredMultigraph, Graph, GraphFamily, Member, Mode, Vertex};
use crate::error::{Error, Result};

/// Unions the members into one multigraph, coloring each edge of `G_i` with
/// `i`. In list mode the memberships become per-vertex color lists.
pub fn family_to_adapted(family: &GraphFamily) -> EdgeColoredMultigraph {
    let edges: Vec<_> = family
        .graphs()
        .enumerate()
        .flat_map(|(i, g)| g.edges().map(move |(u, v)| (u, v, i + 1)))
        .collect();
    let lists = match family.mode() {
        Mode::Common => None,
        Mode::List => {
            Some((0..family.universe_size()).map(|v| family.memberships(v).to_vec()).collect())
        }
    };
    EdgeColoredMultigraph::new(family.universe_size(), family.k(), edges, lists)
        .expect("family edges are within the palette")
}

/// Splits a multigraph into its color classes: member `i` carries exactly the
/// color-`i` edges. Without lists every member spans the full vertex set.
pub fn adapted_to_family(m: &EdgeColoredMultigraph, palette_size: usize) -> Result<GraphFamily> {
    if palette_size == 0 {
        return Err(Error::InvalidFamily("palette must be nonempty".into()));
    }
    if let Some(e) = m.edges().iter().find(|e| e.color > palette_size) {
        return Err(Error::ColorOutOfRange { color: e.color, palette: palette_size });
    }
    let n = m.vertex_count();
    let mut members = Vec::with_capacity(palette_size);
    for color in 1..=palette_size {
        let edges: Vec<_> =
            m.edges().iter().filter(|e| e.color == color).map(|e| (e.u, e.v)).collect();
        let graph = match m.lists() {
            None => Graph::from_edges(n, edges)?,
            Some(lists) => {
                let vertices = (0..n).filter(|&v| lists[v].binary_search(&color).is_ok());
                Graph::new(n, vertices, edges)?
            }
        };
        members.push(Member { name: format!("G{color}"), graph });
    }
    let mode = if m.lists().is_some() { Mode::List } else { Mode::Common };
    GraphFamily::new(default_labels(n), mode, members)
}

/// A named block of a vertex partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub name: String,
    pub vertices: Vec<Vertex>,
}

/// A graph with a partition of its vertex set into nonempty blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionedGraph {
    graph: Graph,
    blocks: Vec<Block>,
    block_of: Vec<usize>,
}

impl PartitionedGraph {
    pub fn new(graph: Graph, blocks: Vec<Block>) -> Result<Self> {
        let mut block_of = vec![usize::MAX; graph.id_space()];
        for (b, block) in blocks.iter().enumerate() {
            if block.vertices.is_empty() {
                return Err(Error::InvalidPartition(format!("block {} is empty", block.name)));
            }
            for &v in &block.vertices {
                if !graph.contains(v) {
                    return Err(Error::InvalidPartition(format!("vertex {v} is not in the graph")));
                }
                if block_of[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("vertex {v} is in two blocks")));
                }
                block_of[v] = b;
            }
        }
        if let Some(v) = graph.vertices().find(|&v| block_of[v] == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} is in no block")));
        }
        Ok(PartitionedGraph { graph, blocks, block_of })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_of(&self, v: Vertex) -> usize {
        self.block_of[v]
    }

    /// True iff `chosen` has exactly one vertex per block (in block order) and
    /// is independent.
    pub fn is_independent_transversal(&self, chosen: &[Vertex]) -> bool {
        chosen.len() == self.blocks.len()
            && chosen.iter().enumerate().all(|(b, &v)| self.graph.contains(v) && self.block_of[v] == b)
            && chosen
                .iter()
                .enumerate()
                .all(|(i, &u)| chosen[i + 1..].iter().all(|&v| !self.graph.has_edge(u, v)))
    }
}

/// The transversal graph `H` of a family, with the origin `(v, i)` of every
/// vertex of `H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalGraph {
    pub partitioned: PartitionedGraph,
    pub origin: Vec<(Vertex, Color)>,
}

impl TransversalGraph {
    /// Reads a transversal (one vertex per block, block order) as a coloring.
    pub fn to_coloring(&self, chosen: &[Vertex]) -> CooperativeColoring {
        let mut c = CooperativeColoring::unassigned(self.partitioned.blocks().len());
        for &x in chosen {
            let (v, color) = self.origin[x];
            c.set(v, Some(color));
        }
        c
    }

    /// The `H`-vertex standing for `(v, color)`, if present.
    pub fn vertex_for(&self, v: Vertex, color: Color) -> Option<Vertex> {
        let block = &self.partitioned.blocks()[v];
        block.vertices.iter().copied().find(|&x| self.origin[x].1 == color)
    }
}

/// Builds `H` with a vertex `(v, i)` for each membership, an edge
/// `(u, i)(v, i)` for each edge `uv` of `G_i`, and one block `{v} x [k]` per
/// universal vertex. In common mode `(v, i)` has id `v*k + i - 1`.
pub fn family_to_transversal(family: &GraphFamily) -> TransversalGraph {
    let n = family.universe_size();
    let k = family.k();
    let mut origin = Vec::new();
    let mut id = vec![usize::MAX; n * k];
    let mut blocks = Vec::with_capacity(n);
    for v in 0..n {
        let mut vertices = Vec::new();
        for &color in family.memberships(v) {
            id[v * k + color - 1] = origin.len();
            vertices.push(origin.len());
            origin.push((v, color));
        }
        blocks.push(Block { name: family.label(v).to_string(), vertices });
    }
    let edges: Vec<_> = family
        .graphs()
        .enumerate()
        .flat_map(|(i, g)| g.edges().map(move |(u, v)| (u * k + i, v * k + i)))
        .map(|(a, b)| (id[a], id[b]))
        .collect();
    let graph = Graph::from_edges(origin.len(), edges).expect("transversal graph is valid");
    let partitioned = PartitionedGraph::new(graph, blocks).expect("blocks partition V(H)");
    TransversalGraph { partitioned, origin }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_identical_members_give_parallel_edges() {
        let f = GraphFamily::common(vec![Graph::complete(2), Graph::complete(2)]).unwrap();
        let m = family_to_adapted(&f);
        let colors: Vec<_> = m.edges().iter().map(|e| (e.u, e.v, e.color)).collect();
        assert_eq!(colors, vec![(0, 1, 1), (0, 1, 2)]);
    }

    #[test]
    fn edgeless_member_contributes_nothing() {
        let f = GraphFamily::common(vec![Graph::complete(2), Graph::empty(2)]).unwrap();
        let m = family_to_adapted(&f);
        assert_eq!(m.edges().len(), 1);
        assert_eq!(m.palette(), 2);
        let back = adapted_to_family(&m, 2).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn adapted_to_family_rejects_small_palette() {
        let m = EdgeColoredMultigraph::new(2, 3, [(0, 1, 3)], None).unwrap();
        assert_eq!(
            adapted_to_family(&m, 2),
            Err(Error::ColorOutOfRange { color: 3, palette: 2 })
        );
    }

    #[test]
    fn transversal_of_single_k2() {
        let f = GraphFamily::common(vec![Graph::complete(2)]).unwrap();
        let t = family_to_transversal(&f);
        assert_eq!(t.partitioned.graph(), &Graph::complete(2));
        assert_eq!(t.partitioned.blocks().len(), 2);
        assert!(t.partitioned.blocks().iter().all(|b| b.vertices.len() == 1));
    }

    #[test]
    fn transversal_of_two_k2() {
        let f = GraphFamily::common(vec![Graph::complete(2), Graph::complete(2)]).unwrap();
        let t = family_to_transversal(&f);
        let h = t.partitioned.graph();
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 3)]);
        assert_eq!(t.partitioned.blocks()[0].vertices, vec![0, 1]);
        assert_eq!(t.partitioned.blocks()[1].vertices, vec![2, 3]);
        assert!(t.partitioned.is_independent_transversal(&[0, 3]));
        assert!(!t.partitioned.is_independent_transversal(&[0, 2]));
        assert_eq!(t.to_coloring(&[0, 3]), CooperativeColoring::from_colors(vec![1, 2]));
    }

    #[test]
    fn transversal_cardinality() {
        let graphs = vec![Graph::path(5), Graph::star(4), Graph::empty(5)];
        let f = GraphFamily::common(graphs).unwrap();
        assert_eq!(family_to_transversal(&f).partitioned.graph().vertex_count(), 15);
    }

    #[test]
    fn partition_validation() {
        let g = Graph::empty(2);
        let one = |vs: Vec<usize>| Block { name: "x".into(), vertices: vs };
        assert!(PartitionedGraph::new(g.clone(), vec![one(vec![0])]).is_err());
        assert!(PartitionedGraph::new(g.clone(), vec![one(vec![0, 1]), one(vec![])]).is_err());
        assert!(PartitionedGraph::new(g.clone(), vec![one(vec![0, 1]), one(vec![1])]).is_err());
        assert!(PartitionedGraph::new(g, vec![one(vec![0, 1])]).is_ok());
    }
}
