use super::{Color, Graph, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColoredEdge {
    pub u: Vertex,
    pub v: Vertex,
    pub color: Color,
}

/// A multigraph on `0..n` whose edges carry colors from `1..=palette`.
///
/// Parallel edges are allowed only with distinct colors; repeated
/// `(pair, color)` entries collapse. An optional per-vertex color list
/// restricts which colors a vertex may take (the list-coloring view).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoredMultigraph {
    n: usize,
    palette: usize,
    edges: Vec<ColoredEdge>,
    incidence: Vec<Vec<(Vertex, Color)>>,
    lists: Option<Vec<Vec<Color>>>,
}

impl EdgeColoredMultigraph {
    pub fn new(
        n: usize,
        palette: usize,
        edges: impl IntoIterator<Item = (Vertex, Vertex, Color)>,
        lists: Option<Vec<Vec<Color>>>,
    ) -> Result<Self> {
        let mut out = Vec::new();
        for (u, v, color) in edges {
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange { vertex: x, id_space: n });
                }
            }
            if color == 0 || color > palette {
                return Err(Error::ColorOutOfRange { color, palette });
            }
            out.push(ColoredEdge { u: u.min(v), v: u.max(v), color });
        }
        out.sort_unstable();
        out.dedup();
        let lists = match lists {
            Some(mut lists) => {
                if lists.len() != n {
                    return Err(Error::InvalidFamily(format!(
                        "{} color lists for {n} vertices",
                        lists.len()
                    )));
                }
                for list in lists.iter_mut() {
                    list.sort_unstable();
                    list.dedup();
                    if let Some(&color) = list.iter().find(|&&c| c == 0 || c > palette) {
                        return Err(Error::ColorOutOfRange { color, palette });
                    }
                }
                Some(lists)
            }
            None => None,
        };
        let mut incidence = vec![Vec::new(); n];
        for e in &out {
            incidence[e.u].push((e.v, e.color));
            incidence[e.v].push((e.u, e.color));
        }
        Ok(EdgeColoredMultigraph { n, palette, edges: out, incidence, lists })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    /// Colored edges sorted by `(u, v, color)` with `u < v`.
    pub fn edges(&self) -> &[ColoredEdge] {
        &self.edges
    }

    /// `(neighbor, edge color)` pairs incident to `v`.
    pub fn incident(&self, v: Vertex) -> &[(Vertex, Color)] {
        &self.incidence[v]
    }

    pub fn lists(&self) -> Option<&[Vec<Color>]> {
        self.lists.as_deref()
    }

    /// Colors `v` may take: its list, or the whole palette.
    pub fn allowed(&self, v: Vertex) -> Vec<Color> {
        match &self.lists {
            Some(lists) => lists[v].clone(),
            None => (1..=self.palette).collect(),
        }
    }

    pub fn is_allowed(&self, v: Vertex, color: Color) -> bool {
        match &self.lists {
            Some(lists) => lists[v].binary_search(&color).is_ok(),
            None => (1..=self.palette).contains(&color),
        }
    }

    /// Subgraph of color-`color` edges on the full vertex set.
    pub fn color_class(&self, color: Color) -> Graph {
        let edges = self.edges.iter().filter(|e| e.color == color).map(|e| (e.u, e.v));
        Graph::from_edges(self.n, edges.collect::<Vec<_>>()).expect("color class is valid")
    }

    /// Maximum number of same-colored edges at one vertex.
    pub fn max_mono_degree(&self) -> usize {
        (1..=self.palette).map(|c| self.color_class(c).max_degree()).max().unwrap_or(0)
    }

    /// Induced sub-multigraph on the vertices selected by `keep`, renumbered
    /// densely in ascending order. Also returns the map back to old ids.
    pub fn induced(&self, keep: impl Fn(Vertex) -> bool) -> (Self, Vec<Vertex>) {
        let back: Vec<Vertex> = (0..self.n).filter(|&v| keep(v)).collect();
        let mut fwd = vec![usize::MAX; self.n];
        for (i, &v) in back.iter().enumerate() {
            fwd[v] = i;
        }
        let edges: Vec<_> = self
            .edges
            .iter()
            .filter(|e| fwd[e.u] != usize::MAX && fwd[e.v] != usize::MAX)
            .map(|e| (fwd[e.u], fwd[e.v], e.color))
            .collect();
        let lists = self.lists.as_ref().map(|l| back.iter().map(|&v| l[v].clone()).collect());
        let m = EdgeColoredMultigraph::new(back.len(), self.palette, edges, lists)
            .expect("induced multigraph is valid");
        (m, back)
    }

    pub fn without_vertex(&self, x: Vertex) -> Self {
        self.induced(|v| v != x).0
    }

    /// Replaces the per-vertex lists.
    pub fn with_lists(&self, lists: Option<Vec<Vec<Color>>>) -> Result<Self> {
        let edges = self.edges.iter().map(|e| (e.u, e.v, e.color));
        EdgeColoredMultigraph::new(self.n, self.palette, edges.collect::<Vec<_>>(), lists)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_pair_color_collapses_but_distinct_colors_stay() {
        let m = EdgeColoredMultigraph::new(2, 2, [(0, 1, 1), (1, 0, 1), (0, 1, 2)], None).unwrap();
        assert_eq!(m.edges().len(), 2);
        assert_eq!(m.incident(0), &[(1, 1), (1, 2)]);
    }

    #[test]
    fn rejects_out_of_palette() {
        assert_eq!(
            EdgeColoredMultigraph::new(2, 1, [(0, 1, 2)], None),
            Err(Error::ColorOutOfRange { color: 2, palette: 1 })
        );
    }

    #[test]
    fn induced_renumbers() {
        let m = EdgeColoredMultigraph::new(3, 1, [(0, 2, 1), (1, 2, 1)], None).unwrap();
        let (sub, back) = m.induced(|v| v != 0);
        assert_eq!(back, vec![1, 2]);
        assert_eq!(sub.edges(), &[ColoredEdge { u: 0, v: 1, color: 1 }]);
    }
}
