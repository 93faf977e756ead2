use std::fmt;

use super::{Color, EdgeColoredMultigraph, GraphFamily, Vertex};

/// Per-vertex choice of a color (a 1-based member index).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CooperativeColoring {
    assignment: Vec<Option<Color>>,
}

impl CooperativeColoring {
    /// An all-unassigned coloring of `n` vertices.
    pub fn unassigned(n: usize) -> Self {
        CooperativeColoring { assignment: vec![None; n] }
    }

    pub fn from_colors(colors: Vec<Color>) -> Self {
        CooperativeColoring { assignment: colors.into_iter().map(Some).collect() }
    }

    pub fn from_partial(assignment: Vec<Option<Color>>) -> Self {
        CooperativeColoring { assignment }
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    pub fn get(&self, v: Vertex) -> Option<Color> {
        self.assignment.get(v).copied().flatten()
    }

    pub fn set(&mut self, v: Vertex, color: Option<Color>) {
        self.assignment[v] = color;
    }

    pub fn as_slice(&self) -> &[Option<Color>] {
        &self.assignment
    }

    /// Color classes `R_1..R_k` as sorted vertex lists.
    pub fn classes(&self, k: usize) -> Vec<Vec<Vertex>> {
        let mut out = vec![Vec::new(); k];
        for (v, c) in self.assignment.iter().enumerate() {
            if let Some(c) = *c {
                if (1..=k).contains(&c) {
                    out[c - 1].push(v);
                }
            }
        }
        out
    }
}

/// Why a coloring was rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    SizeMismatch { expected: usize, found: usize },
    Unassigned(Vertex),
    OutOfRange { vertex: Vertex, color: Color },
    /// The vertex is not in the member graph (or list) of its color.
    NotMember { vertex: Vertex, color: Color },
    /// Both endpoints of a color-`color` edge received `color`.
    Conflict { u: Vertex, v: Vertex, color: Color },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SizeMismatch { expected, found } => {
                write!(f, "coloring covers {found} vertices, expected {expected}")
            }
            Violation::Unassigned(v) => write!(f, "vertex {v} is unassigned"),
            Violation::OutOfRange { vertex, color } => {
                write!(f, "vertex {vertex} has out-of-range color {color}")
            }
            Violation::NotMember { vertex, color } => {
                write!(f, "vertex {vertex} is not in member {color}")
            }
            Violation::Conflict { u, v, color } => {
                write!(f, "edge {u}-{v} of color {color} has both endpoints colored {color}")
            }
        }
    }
}

impl std::error::Error for Violation {}

/// Checks that every vertex takes one of its memberships and that each color
/// class `R_i` is independent in `G_i`.
pub fn verify_cooperative(
    family: &GraphFamily,
    coloring: &CooperativeColoring,
) -> Result<(), Violation> {
    let n = family.universe_size();
    if coloring.len() != n {
        return Err(Violation::SizeMismatch { expected: n, found: coloring.len() });
    }
    for v in 0..n {
        let color = coloring.get(v).ok_or(Violation::Unassigned(v))?;
        if color == 0 || color > family.k() {
            return Err(Violation::OutOfRange { vertex: v, color });
        }
        if !family.graph(color).contains(v) {
            return Err(Violation::NotMember { vertex: v, color });
        }
    }
    for color in 1..=family.k() {
        for (u, v) in family.graph(color).edges() {
            if coloring.get(u) == Some(color) && coloring.get(v) == Some(color) {
                return Err(Violation::Conflict { u, v, color });
            }
        }
    }
    Ok(())
}

/// Checks that no edge `e = uv` has `color(e) = sigma(u) = sigma(v)`, and that
/// every vertex takes an allowed color.
pub fn verify_adapted(
    m: &EdgeColoredMultigraph,
    sigma: &CooperativeColoring,
) -> Result<(), Violation> {
    let n = m.vertex_count();
    if sigma.len() != n {
        return Err(Violation::SizeMismatch { expected: n, found: sigma.len() });
    }
    for v in 0..n {
        let color = sigma.get(v).ok_or(Violation::Unassigned(v))?;
        if color == 0 || color > m.palette() {
            return Err(Violation::OutOfRange { vertex: v, color });
        }
        if !m.is_allowed(v, color) {
            return Err(Violation::NotMember { vertex: v, color });
        }
    }
    for e in m.edges() {
        if sigma.get(e.u) == Some(e.color) && sigma.get(e.v) == Some(e.color) {
            return Err(Violation::Conflict { u: e.u, v: e.v, color: e.color });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn k2_family(extra: Option<Graph>) -> GraphFamily {
        let mut graphs = vec![Graph::complete(2)];
        graphs.extend(extra);
        GraphFamily::common(graphs).unwrap()
    }

    #[test]
    fn edge_inside_class_is_rejected() {
        let f = k2_family(None);
        let c = CooperativeColoring::from_colors(vec![1, 1]);
        assert_eq!(verify_cooperative(&f, &c), Err(Violation::Conflict { u: 0, v: 1, color: 1 }));
    }

    #[test]
    fn edgeless_member_accepts_everything() {
        let f = k2_family(Some(Graph::empty(2)));
        assert!(verify_cooperative(&f, &CooperativeColoring::from_colors(vec![2, 2])).is_ok());
    }

    #[test]
    fn diagnostics_for_bad_assignments() {
        let f = k2_family(Some(Graph::empty(2)));
        let partial = CooperativeColoring::from_partial(vec![Some(1), None]);
        assert_eq!(verify_cooperative(&f, &partial), Err(Violation::Unassigned(1)));
        let oob = CooperativeColoring::from_colors(vec![3, 1]);
        assert_eq!(verify_cooperative(&f, &oob), Err(Violation::OutOfRange { vertex: 0, color: 3 }));
        let short = CooperativeColoring::from_colors(vec![1]);
        assert!(matches!(verify_cooperative(&f, &short), Err(Violation::SizeMismatch { .. })));
    }

    #[test]
    fn list_rule_requires_membership() {
        let a = Graph::new(2, [0], []).unwrap();
        let b = Graph::new(2, [0, 1], []).unwrap();
        let f = GraphFamily::list(2, vec![a, b]).unwrap();
        let c = CooperativeColoring::from_colors(vec![1, 1]);
        assert_eq!(verify_cooperative(&f, &c), Err(Violation::NotMember { vertex: 1, color: 1 }));
    }

    #[test]
    fn adapted_rule_examples() {
        let m = EdgeColoredMultigraph::new(2, 2, [(0, 1, 1)], None).unwrap();
        let check = |a, b| verify_adapted(&m, &CooperativeColoring::from_colors(vec![a, b])).is_ok();
        assert!(!check(1, 1));
        assert!(check(2, 2));
        assert!(check(1, 2));
        let partial = CooperativeColoring::from_partial(vec![Some(1), None]);
        assert_eq!(verify_adapted(&m, &partial), Err(Violation::Unassigned(1)));
    }
}
