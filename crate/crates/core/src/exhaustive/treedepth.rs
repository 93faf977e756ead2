use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Largest vertex count [`treedepth_exact`] accepts.
pub const TREEDEPTH_CAP: usize = 14;
/// Upper limit for [`treedepth_exact_with_cap`].
pub const TREEDEPTH_HARD_CAP: usize = 20;

/// A rooted forest on a subset of the id space `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedForest {
    parent: Vec<Option<Vertex>>,
    present: Vec<bool>,
}

impl RootedForest {
    /// `parent[v] = None` marks a root. Only vertices with `present[v]` are in
    /// the forest; their parents must be present too, and parent chains must
    /// be acyclic.
    pub fn new(parent: Vec<Option<Vertex>>, present: Vec<bool>) -> Result<Self> {
        if parent.len() != present.len() {
            return Err(Error::InvalidForest("parent and presence lengths differ".into()));
        }
        let n = parent.len();
        for v in (0..n).filter(|&v| present[v]) {
            let mut steps = 0;
            let mut x = v;
            while let Some(p) = parent[x] {
                if p >= n || !present[p] {
                    return Err(Error::InvalidForest(format!("parent {p} of {x} is not in the forest")));
                }
                steps += 1;
                if steps > n {
                    return Err(Error::InvalidForest(format!("cycle through vertex {v}")));
                }
                x = p;
            }
        }
        Ok(RootedForest { parent, present })
    }

    /// A forest spanning the whole id space.
    pub fn spanning(parent: Vec<Option<Vertex>>) -> Result<Self> {
        let present = vec![true; parent.len()];
        RootedForest::new(parent, present)
    }

    pub fn id_space(&self) -> usize {
        self.parent.len()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.present.get(v).copied().unwrap_or(false)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.parent.len()).filter(|&v| self.present[v])
    }

    pub fn parent(&self, v: Vertex) -> Option<Vertex> {
        self.parent[v]
    }

    pub fn roots(&self) -> Vec<Vertex> {
        self.vertices().filter(|&v| self.parent[v].is_none()).collect()
    }

    pub fn is_root(&self, v: Vertex) -> bool {
        self.contains(v) && self.parent[v].is_none()
    }

    /// Distance from `v` to its root.
    pub fn depth(&self, v: Vertex) -> usize {
        let mut d = 0;
        let mut x = v;
        while let Some(p) = self.parent[x] {
            d += 1;
            x = p;
        }
        d
    }

    pub fn root_of(&self, v: Vertex) -> Vertex {
        let mut x = v;
        while let Some(p) = self.parent[x] {
            x = p;
        }
        x
    }

    /// Maximum depth over vertices; 0 for an empty or all-roots forest.
    pub fn height(&self) -> usize {
        self.vertices().map(|v| self.depth(v)).max().unwrap_or(0)
    }

    pub fn is_ancestor(&self, a: Vertex, v: Vertex) -> bool {
        let mut x = v;
        while let Some(p) = self.parent[x] {
            if p == a {
                return true;
            }
            x = p;
        }
        false
    }

    /// The forest with its roots deleted; former children of roots become
    /// roots.
    pub fn without_roots(&self) -> RootedForest {
        let present: Vec<bool> = (0..self.id_space()).map(|v| self.contains(v) && self.parent[v].is_some()).collect();
        let parent = (0..self.id_space())
            .map(|v| self.parent[v].filter(|&p| present[p]))
            .collect();
        RootedForest { parent, present }
    }

    /// Restriction to the vertices selected by `keep`, where every kept
    /// vertex's nearest kept ancestor becomes its parent.
    pub fn restrict(&self, keep: impl Fn(Vertex) -> bool) -> RootedForest {
        let present: Vec<bool> = (0..self.id_space()).map(|v| self.contains(v) && keep(v)).collect();
        let parent = (0..self.id_space())
            .map(|v| {
                if !present[v] {
                    return None;
                }
                let mut x = v;
                while let Some(p) = self.parent[x] {
                    if present[p] {
                        return Some(p);
                    }
                    x = p;
                }
                None
            })
            .collect();
        RootedForest { parent, present }
    }

    /// True iff `g` is a subgraph of the closure of this forest.
    pub fn closure_contains(&self, g: &Graph) -> bool {
        g.vertices().all(|v| self.contains(v))
            && g.edges().all(|(u, v)| self.is_ancestor(u, v) || self.is_ancestor(v, u))
    }
}

/// The graph joining every ancestor-descendant pair of `f`, on the same
/// vertex set.
pub fn closure(f: &RootedForest) -> Graph {
    let mut edges = Vec::new();
    for v in f.vertices() {
        let mut x = v;
        while let Some(p) = f.parent(x) {
            edges.push((p, v));
            x = p;
        }
    }
    Graph::new(f.id_space(), f.vertices(), edges).expect("closure edges lie inside the forest")
}

/// Exact treedepth with a witness forest of height `depth - 1` whose closure
/// contains `g`. The empty graph has treedepth 0.
pub fn treedepth_exact(g: &Graph) -> Result<(usize, RootedForest)> {
    treedepth_exact_with_cap(g, TREEDEPTH_CAP)
}

/// [`treedepth_exact`] with a caller-chosen size cap (at most
/// [`TREEDEPTH_HARD_CAP`]).
pub fn treedepth_exact_with_cap(g: &Graph, cap: usize) -> Result<(usize, RootedForest)> {
    let n = g.vertex_count();
    let cap = cap.min(TREEDEPTH_HARD_CAP);
    if n > cap {
        return Err(Error::CapExceeded { what: "treedepth input size", requested: n, cap });
    }
    let (compact, back) = g.compact();
    let adj: Vec<u32> = (0..n)
        .map(|v| compact.neighbors(v).iter().fold(0u32, |m, &w| m | 1 << w))
        .collect();
    let mut solver = Treedepth { adj, memo: HashMap::new() };
    let full = if n == 0 { 0 } else { (1u32 << n) - 1 };
    let depth = solver.depth(full);
    let mut parent_compact = vec![None; n];
    solver.build(full, None, &mut parent_compact);
    let mut parent = vec![None; g.id_space()];
    let mut present = vec![false; g.id_space()];
    for (i, &v) in back.iter().enumerate() {
        present[v] = true;
        parent[v] = parent_compact[i].map(|p: usize| back[p]);
    }
    let forest = RootedForest::new(parent, present)?;
    debug_assert!(forest.closure_contains(g));
    debug_assert_eq!(forest.height() + 1, depth.max(1));
    Ok((depth, forest))
}

struct Treedepth {
    adj: Vec<u32>,
    /// Connected vertex set -> (treedepth, best root).
    memo: HashMap<u32, (usize, usize)>,
}

impl Treedepth {
    fn components(&self, mask: u32) -> Vec<u32> {
        let mut rest = mask;
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest & rest.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let v = frontier.trailing_zeros() as usize;
                frontier &= frontier - 1;
                let fresh = self.adj[v] & mask & !comp;
                comp |= fresh;
                frontier |= fresh;
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }

    fn depth(&mut self, mask: u32) -> usize {
        if mask == 0 {
            return 0;
        }
        let comps = self.components(mask);
        if comps.len() > 1 {
            return comps.into_iter().map(|c| self.depth(c)).max().unwrap_or(0);
        }
        if let Some(&(d, _)) = self.memo.get(&mask) {
            return d;
        }
        let best = if mask.count_ones() == 1 {
            (1, mask.trailing_zeros() as usize)
        } else {
            let mut best = (usize::MAX, 0);
            let mut bits = mask;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                let d = 1 + self.depth(mask & !(1 << v));
                if d < best.0 {
                    best = (d, v);
                }
            }
            best
        };
        self.memo.insert(mask, best);
        best.0
    }

    fn build(&mut self, mask: u32, parent: Option<usize>, out: &mut [Option<usize>]) {
        for comp in self.components(mask) {
            self.depth(comp);
            let (_, root) = self.memo[&comp];
            out[root] = parent;
            self.build(comp & !(1 << root), Some(root), out);
        }
    }
}
