use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::{Color, Graph, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every member spans the whole universal vertex set.
    Common,
    /// Members span subsets whose union is the universal vertex set.
    List,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Member {
    pub name: String,
    pub graph: Graph,
}

/// An ordered family `G_1..G_k` over the universal vertex set `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFamily {
    labels: Vec<String>,
    mode: Mode,
    members: Vec<Member>,
    memberships: Vec<Vec<Color>>,
}

impl GraphFamily {
    pub fn new(labels: Vec<String>, mode: Mode, members: Vec<Member>) -> Result<Self> {
        let n = labels.len();
        let mut seen = HashSet::with_capacity(n);
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::InvalidFamily(format!("duplicate vertex label {label:?}")));
            }
        }
        let mut memberships = vec![Vec::new(); n];
        for (i, member) in members.iter().enumerate() {
            if member.graph.id_space() != n {
                return Err(Error::InvalidFamily(format!(
                    "member {} has id space {} but the universe has {n} vertices",
                    member.name,
                    member.graph.id_space()
                )));
            }
            if mode == Mode::Common && member.graph.vertex_count() != n {
                return Err(Error::InvalidFamily(format!(
                    "member {} does not span the common vertex set",
                    member.name
                )));
            }
            for v in member.graph.vertices() {
                memberships[v].push(i + 1);
            }
        }
        if let Some(v) = memberships.iter().position(Vec::is_empty) {
            return Err(Error::InvalidFamily(format!(
                "vertex {:?} belongs to no member",
                labels[v]
            )));
        }
        Ok(GraphFamily { labels, mode, members, memberships })
    }

    /// Common-vertex-set family with labels `"0".."n-1"` and names `G1..Gk`.
    pub fn common(graphs: Vec<Graph>) -> Result<Self> {
        let n = graphs.first().map(Graph::id_space).unwrap_or(0);
        Self::new(default_labels(n), Mode::Common, named(graphs))
    }

    /// List-mode family over `0..n` with default labels and names.
    pub fn list(n: usize, graphs: Vec<Graph>) -> Result<Self> {
        Self::new(default_labels(n), Mode::List, named(graphs))
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Number of members `k`.
    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn universe_size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> &str {
        &self.labels[v]
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    /// The graph of color `i` (1-based).
    pub fn graph(&self, color: Color) -> &Graph {
        &self.members[color - 1].graph
    }

    pub fn graphs(&self) -> impl Iterator<Item = &Graph> + '_ {
        self.members.iter().map(|m| &m.graph)
    }

    /// Ascending colors of the members containing `v`.
    pub fn memberships(&self, v: Vertex) -> &[Color] {
        &self.memberships[v]
    }

    pub fn min_membership(&self) -> usize {
        self.memberships.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_membership(&self) -> usize {
        self.memberships.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Maximum degree over all members.
    pub fn max_degree(&self) -> usize {
        self.graphs().map(Graph::max_degree).max().unwrap_or(0)
    }

    /// List-mode subfamily where member `i` is induced on `keep[i-1]`. The
    /// result is renumbered densely over the union of the kept sets; the second
    /// value maps new vertex ids back to ids of `self`.
    pub fn restrict(&self, keep: &[Vec<Vertex>]) -> Result<(GraphFamily, Vec<Vertex>)> {
        if keep.len() != self.k() {
            return Err(Error::InvalidFamily(format!(
                "restriction lists {} members, family has {}",
                keep.len(),
                self.k()
            )));
        }
        let n = self.universe_size();
        let mut used = vec![false; n];
        for list in keep {
            for &v in list {
                if v >= n {
                    return Err(Error::VertexOutOfRange { vertex: v, id_space: n });
                }
                used[v] = true;
            }
        }
        let back: Vec<Vertex> = (0..n).filter(|&v| used[v]).collect();
        let mut fwd = vec![usize::MAX; n];
        for (i, &v) in back.iter().enumerate() {
            fwd[v] = i;
        }
        let mut members = Vec::with_capacity(self.k());
        for (member, list) in self.members.iter().zip(keep) {
            let mut mask = vec![false; n];
            for &v in list {
                if !member.graph.contains(v) {
                    return Err(Error::InvalidFamily(format!(
                        "vertex {v} is not in member {}",
                        member.name
                    )));
                }
                mask[v] = true;
            }
            let edges: Vec<_> = member
                .graph
                .edges()
                .filter(|&(u, v)| mask[u] && mask[v])
                .map(|(u, v)| (fwd[u], fwd[v]))
                .collect();
            let graph = Graph::new(back.len(), list.iter().map(|&v| fwd[v]), edges)?;
            members.push(Member { name: member.name.clone(), graph });
        }
        let labels = back.iter().map(|&v| self.labels[v].clone()).collect();
        Ok((GraphFamily::new(labels, Mode::List, members)?, back))
    }
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (0..n).map(|v| v.to_string()).collect()
}

fn named(graphs: Vec<Graph>) -> Vec<Member> {
    graphs
        .into_iter()
        .enumerate()
        .map(|(i, graph)| Member { name: format!("G{}", i + 1), graph })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn common_mode_requires_spanning_members() {
        let partial = Graph::new(3, [0, 1], [(0, 1)]).unwrap();
        assert!(GraphFamily::common(vec![Graph::empty(3), partial.clone()]).is_err());
        assert!(GraphFamily::list(3, vec![Graph::empty(3), partial]).is_ok());
    }

    #[test]
    fn list_mode_requires_cover() {
        let g = Graph::new(3, [0, 1], []).unwrap();
        assert!(matches!(GraphFamily::list(3, vec![g]), Err(Error::InvalidFamily(_))));
    }

    #[test]
    fn memberships_are_one_based() {
        let a = Graph::new(3, [0, 1], []).unwrap();
        let b = Graph::new(3, [1, 2], []).unwrap();
        let f = GraphFamily::list(3, vec![a, b]).unwrap();
        assert_eq!(f.memberships(0), &[1]);
        assert_eq!(f.memberships(1), &[1, 2]);
        assert_eq!(f.memberships(2), &[2]);
        assert_eq!((f.min_membership(), f.max_membership()), (1, 2));
    }

    #[test]
    fn restrict_renumbers_and_induces() {
        let f = GraphFamily::common(vec![Graph::path(4), Graph::complete(4)]).unwrap();
        let (sub, back) = f.restrict(&[vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(back, vec![1, 2, 3]);
        assert_eq!(sub.graph(1).edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(sub.graph(2).edges().collect::<Vec<_>>(), vec![(1, 2)]);
        assert_eq!(sub.labels(), &["1", "2", "3"]);
    }
}
