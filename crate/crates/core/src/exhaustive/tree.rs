use super::{Budget, Meter, SearchOutcome};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Largest pattern (in nodes) [`find_qary_tree`] accepts.
pub const QARY_PATTERN_CAP: usize = 63;

/// Nodes of the q-ary tree of height h: `1 + q + ... + q^h`.
pub fn qary_tree_size(q: usize, h: usize) -> Option<usize> {
    let mut total = 0usize;
    let mut level = 1usize;
    for _ in 0..=h {
        total = total.checked_add(level)?;
        level = level.checked_mul(q)?;
    }
    Some(total)
}

/// The q-ary tree of height h with nodes in BFS order: node 0 is the root and
/// the children of node `j` are `q*j+1 ..= q*j+q`.
pub fn qary_tree(q: usize, h: usize) -> Graph {
    let size = qary_tree_size(q, h).expect("pattern size fits in usize");
    Graph::from_edges(size, (1..size).map(|i| ((i - 1) / q, i))).expect("tree is valid")
}

/// An injective map from the pattern's BFS-ordered nodes into a host graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeEmbedding {
    pub q: usize,
    pub h: usize,
    pub mapping: Vec<Vertex>,
}

impl TreeEmbedding {
    /// Images pairwise distinct and every parent-child pair adjacent in `host`.
    pub fn is_valid_in(&self, host: &Graph) -> bool {
        let mut seen = std::collections::HashSet::new();
        qary_tree_size(self.q, self.h) == Some(self.mapping.len())
            && self.mapping.iter().all(|&v| host.contains(v) && seen.insert(v))
            && (1..self.mapping.len())
                .all(|i| host.has_edge(self.mapping[(i - 1) / self.q], self.mapping[i]))
    }
}

/// Searches `g` for a (not necessarily induced) subgraph isomorphic to the
/// q-ary tree of height `h`.
///
/// Pattern nodes are placed in BFS order; a child is mapped to an unused
/// neighbor of its parent's image, and siblings take ascending images, which
/// is sound because sibling subtrees are isomorphic.
pub fn find_qary_tree(
    g: &Graph,
    q: usize,
    h: usize,
    budget: &Budget,
) -> Result<SearchOutcome<TreeEmbedding>> {
    if q == 0 || h == 0 {
        return Err(Error::Precondition("q and h must be at least 1".into()));
    }
    let size = qary_tree_size(q, h).unwrap_or(usize::MAX);
    if size > QARY_PATTERN_CAP {
        return Err(Error::CapExceeded { what: "q-ary pattern size", requested: size, cap: QARY_PATTERN_CAP });
    }
    let internal = size - q.pow(h as u32);
    let mut state = TreeSearch {
        g,
        q,
        size,
        internal,
        image: vec![usize::MAX; size],
        used: vec![false; g.id_space()],
        meter: Meter::new(budget),
    };
    let found = state.place(0);
    let stats = state.meter.stats(found.err());
    Ok(match found {
        Ok(true) => {
            let embedding = TreeEmbedding { q, h, mapping: state.image };
            debug_assert!(embedding.is_valid_in(g));
            SearchOutcome::sat(embedding, stats)
        }
        Ok(false) => SearchOutcome::unsat(stats),
        Err(_) => SearchOutcome::unknown(stats),
    })
}

struct TreeSearch<'a> {
    g: &'a Graph,
    q: usize,
    size: usize,
    /// Nodes `0..internal` have children.
    internal: usize,
    image: Vec<Vertex>,
    used: Vec<bool>,
    meter: Meter<'a>,
}

impl TreeSearch<'_> {
    fn min_degree(&self, node: usize) -> usize {
        match (node < self.internal, node == 0) {
            (false, _) => 1,
            (true, true) => self.q,
            (true, false) => self.q + 1,
        }
    }

    fn place(&mut self, node: usize) -> std::result::Result<bool, super::BudgetKind> {
        if node == self.size {
            return Ok(true);
        }
        let candidates: Vec<Vertex> = if node == 0 {
            self.g.vertices().collect()
        } else {
            let parent = self.image[(node - 1) / self.q];
            let first_sibling = (node - 1).is_multiple_of(self.q);
            let floor = if first_sibling { 0 } else { self.image[node - 1] + 1 };
            self.g.neighbors(parent).iter().copied().filter(|&w| w >= floor).collect()
        };
        let need = self.min_degree(node);
        for v in candidates {
            if self.used[v] || self.g.degree(v) < need {
                continue;
            }
            if let Some(kind) = self.meter.tick() {
                return Err(kind);
            }
            self.used[v] = true;
            self.image[node] = v;
            if self.place(node + 1)? {
                return Ok(true);
            }
            self.used[v] = false;
        }
        self.image[node] = usize::MAX;
        Ok(false)
    }
}
