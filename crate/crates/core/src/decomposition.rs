//! Vertex splits `(A, B)` in which every `A`-vertex has a bounded number of
//! `B`-neighbors.

use crate::error::{Error, Result};
use crate::exhaustive::{find_qary_tree, treedepth_exact, Budget, RootedForest, Status, TREEDEPTH_CAP};
use crate::graph::{Graph, Vertex};

/// A bipartition of a graph's vertex set with a verified bound on the number of
/// `B`-neighbors of any `A`-vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split {
    a: Vec<Vertex>,
    b: Vec<Vertex>,
    neighbor_bound: usize,
}

impl Split {
    pub fn new(g: &Graph, mut a: Vec<Vertex>, mut b: Vec<Vertex>, neighbor_bound: usize) -> Result<Self> {
        a.sort_unstable();
        b.sort_unstable();
        let mut side = vec![0u8; g.id_space()];
        for (&v, mark) in a.iter().map(|v| (v, 1u8)).chain(b.iter().map(|v| (v, 2u8))) {
            if !g.contains(v) {
                return Err(Error::InvalidPartition(format!("vertex {v} is not in the graph")));
            }
            if side[v] != 0 {
                return Err(Error::InvalidPartition(format!("vertex {v} is on both sides")));
            }
            side[v] = mark;
        }
        if let Some(v) = g.vertices().find(|&v| side[v] == 0) {
            return Err(Error::InvalidPartition(format!("vertex {v} is on neither side")));
        }
        for &v in &a {
            let count = g.neighbors(v).iter().filter(|&&w| side[w] == 2).count();
            if count > neighbor_bound {
                return Err(Error::SplitViolation { vertex: v, count, bound: neighbor_bound });
            }
        }
        Ok(Split { a, b, neighbor_bound })
    }

    pub fn a(&self) -> &[Vertex] {
        &self.a
    }

    pub fn b(&self) -> &[Vertex] {
        &self.b
    }

    pub fn neighbor_bound(&self) -> usize {
        self.neighbor_bound
    }

    pub fn in_a(&self, v: Vertex) -> bool {
        self.a.binary_search(&v).is_ok()
    }

    pub fn in_b(&self, v: Vertex) -> bool {
        self.b.binary_search(&v).is_ok()
    }
}

/// Splits a graph into one member each of two classes. Implementations must
/// return splits whose bound is at most [`Splitter::declared_bound`].
pub trait Splitter {
    fn split(&self, g: &Graph) -> Result<Split>;
    fn declared_bound(&self) -> usize;
    fn name(&self) -> String;
}

/// Leaves to `A`, centers to `B`. A single-edge component's center is its
/// lower-id endpoint; isolated vertices go to `A`.
pub fn star_split(g: &Graph) -> Result<Split> {
    if !g.is_star_forest() {
        return Err(Error::Precondition("star_split requires a star forest".into()));
    }
    let mut a = Vec::new();
    let mut b = Vec::new();
    for comp in g.components() {
        match comp.len() {
            1 => a.push(comp[0]),
            2 => {
                b.push(comp[0]);
                a.push(comp[1]);
            }
            _ => {
                for v in comp {
                    if g.degree(v) >= 2 {
                        b.push(v);
                    } else {
                        a.push(v);
                    }
                }
            }
        }
    }
    Split::new(g, a, b, 1)
}

/// `A` = vertices of degree below `2 q^h`, `B` = the rest.
pub fn threshold_split(g: &Graph, q: usize, h: usize) -> Result<Split> {
    let k = threshold(q, h)?;
    let (a, b): (Vec<Vertex>, Vec<Vertex>) = g.vertices().partition(|&v| g.degree(v) < k);
    Split::new(g, a, b, k - 1)
}

fn threshold(q: usize, h: usize) -> Result<usize> {
    if q < 2 || h < 1 {
        return Err(Error::Precondition("threshold split needs q >= 2 and h >= 1".into()));
    }
    u32::try_from(h)
        .ok()
        .and_then(|h| q.checked_pow(h))
        .and_then(|p| p.checked_mul(2))
        .ok_or_else(|| Error::Overflow(format!("2 * {q}^{h}")))
}

/// Repeated threshold splits: split `g` with height `h`, then its `B`-side
/// with `h - 1`, down to height 1. The i-th split lives on the `B`-side of the
/// previous one.
pub fn threshold_hierarchy(g: &Graph, q: usize, h: usize) -> Result<Vec<(usize, Split)>> {
    let mut out = Vec::new();
    let mut current = g.clone();
    for level in (1..=h).rev() {
        let split = threshold_split(&current, q, level)?;
        let b = split.b().to_vec();
        out.push((level, split));
        if b.is_empty() {
            break;
        }
        current = current.induced(|v| b.binary_search(&v).is_ok());
    }
    Ok(out)
}

/// Checks the tree-freeness claim behind the threshold split: if `g` has no
/// q-ary tree of height `h`, the induced `B`-side has none of height `h - 1`.
/// Returns `Ok(None)` when `g` itself contains the height-`h` tree, otherwise
/// whether the `B`-side is free of the height-`h - 1` tree.
pub fn audit_threshold_split(g: &Graph, q: usize, h: usize) -> Result<Option<bool>> {
    let budget = Budget::unlimited();
    if find_qary_tree(g, q, h, &budget)?.status == Status::Sat {
        return Ok(None);
    }
    if h == 1 {
        return Ok(Some(true));
    }
    let split = threshold_split(g, q, h)?;
    let b_side = g.induced(|v| split.in_b(v));
    Ok(Some(find_qary_tree(&b_side, q, h - 1, &budget)?.status == Status::Unsat))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StarSplitter;

impl Splitter for StarSplitter {
    fn split(&self, g: &Graph) -> Result<Split> {
        star_split(g)
    }

    fn declared_bound(&self) -> usize {
        1
    }

    fn name(&self) -> String {
        "star".into()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThresholdSplitter {
    pub q: usize,
    pub h: usize,
}

impl Splitter for ThresholdSplitter {
    fn split(&self, g: &Graph) -> Result<Split> {
        threshold_split(g, self.q, self.h)
    }

    fn declared_bound(&self) -> usize {
        threshold(self.q, self.h).map(|k| k - 1).unwrap_or(usize::MAX)
    }

    fn name(&self) -> String {
        format!("threshold(q={},h={})", self.q, self.h)
    }
}

fn validate_parts(g: &Graph, parts: &[Vec<Vertex>]) -> Result<Vec<usize>> {
    let mut part_of = vec![usize::MAX; g.id_space()];
    for (i, part) in parts.iter().enumerate() {
        if part.is_empty() {
            return Err(Error::InvalidPartition(format!("part {i} is empty")));
        }
        for &v in part {
            if !g.contains(v) {
                return Err(Error::InvalidPartition(format!("vertex {v} is not in the graph")));
            }
            if part_of[v] != usize::MAX {
                return Err(Error::InvalidPartition(format!("vertex {v} is in two parts")));
            }
            part_of[v] = i;
        }
    }
    if let Some(v) = g.vertices().find(|&v| part_of[v] == usize::MAX) {
        return Err(Error::InvalidPartition(format!("vertex {v} is in no part")));
    }
    Ok(part_of)
}

/// Contracts each part to a vertex, dropping loops and parallel edges.
pub fn quotient(g: &Graph, parts: &[Vec<Vertex>]) -> Result<Graph> {
    let part_of = validate_parts(g, parts)?;
    let edges: Vec<_> = g
        .edges()
        .map(|(u, v)| (part_of[u], part_of[v]))
        .filter(|(a, b)| a != b)
        .collect();
    Graph::from_edges(parts.len(), edges)
}

/// A partitioned graph with an elimination forest for its quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientInstance {
    pub base: Graph,
    pub parts: Vec<Vec<Vertex>>,
    pub quotient: Graph,
    pub elimination_forest: RootedForest,
}

impl QuotientInstance {
    pub fn max_part_size(&self) -> usize {
        self.parts.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Forest height plus one: the treedepth bound this instance certifies.
    pub fn depth(&self) -> usize {
        self.elimination_forest.height() + 1
    }

    fn check(&self) -> Result<()> {
        validate_parts(&self.base, &self.parts)?;
        if quotient(&self.base, &self.parts)? != self.quotient {
            return Err(Error::Precondition("stored quotient does not match the parts".into()));
        }
        if self.elimination_forest.id_space() != self.parts.len()
            || self.elimination_forest.vertices().count() != self.parts.len()
        {
            return Err(Error::InvalidForest("elimination forest must span the part-vertices".into()));
        }
        if !self.elimination_forest.closure_contains(&self.quotient) {
            return Err(Error::InvalidForest("closure does not contain the quotient".into()));
        }
        Ok(())
    }
}

/// Builds a quotient instance. Without `supplied`, each quotient component
/// gets a minimum-height forest from [`treedepth_exact`] (components must have
/// at most [`TREEDEPTH_CAP`] part-vertices). A supplied forest is accepted
/// after checking that its closure contains the quotient.
pub fn build_quotient_instance(
    g: &Graph,
    parts: Vec<Vec<Vertex>>,
    h_cap: usize,
    supplied: Option<RootedForest>,
) -> Result<QuotientInstance> {
    let quotient = quotient(g, &parts)?;
    let k = parts.len();
    let forest = match supplied {
        Some(forest) => forest,
        None => {
            let mut parent = vec![None; k];
            for comp in quotient.components() {
                if comp.len() > TREEDEPTH_CAP {
                    return Err(Error::CapExceeded {
                        what: "quotient component size (supply a forest)",
                        requested: comp.len(),
                        cap: TREEDEPTH_CAP,
                    });
                }
                let sub = quotient.induced(|v| comp.binary_search(&v).is_ok());
                let (_, f) = treedepth_exact(&sub)?;
                for &v in &comp {
                    parent[v] = f.parent(v);
                }
            }
            RootedForest::spanning(parent)?
        }
    };
    let qi = QuotientInstance { base: g.clone(), parts, quotient, elimination_forest: forest };
    qi.check()?;
    let depth = qi.depth();
    if k > 0 && depth > h_cap {
        return Err(Error::TreedepthExceeded { depth, cap: h_cap });
    }
    Ok(qi)
}

/// Root-part split of a quotient instance, with the elimination forest left
/// for the `A`-side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSplit {
    pub split: Split,
    /// The elimination forest with its roots removed, over the non-root
    /// part-vertices.
    pub a_forest: RootedForest,
    /// Components of the quotient restricted to non-root part-vertices.
    pub a_components: Vec<Vec<Vertex>>,
}

/// `B` = union of the root parts, `A` = all other vertices; an `A`-vertex sees
/// only its root-ancestor part in `B`, so the bound is the max part size.
pub fn quotient_split(qi: &QuotientInstance) -> Result<QuotientSplit> {
    qi.check()?;
    let forest = &qi.elimination_forest;
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (i, part) in qi.parts.iter().enumerate() {
        if forest.is_root(i) {
            b.extend_from_slice(part);
        } else {
            a.extend_from_slice(part);
        }
    }
    let split = Split::new(&qi.base, a, b, qi.max_part_size())?;
    let a_forest = forest.without_roots();
    let a_quotient = qi.quotient.induced(|i| !forest.is_root(i));
    Ok(QuotientSplit { split, a_forest, a_components: a_quotient.components() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_split_examples() {
        let s = star_split(&Graph::star(3)).unwrap();
        assert_eq!((s.a(), s.b(), s.neighbor_bound()), (&[1, 2, 3][..], &[0][..], 1));
        let matching = Graph::from_edges(4, [(0, 3), (1, 2)]).unwrap();
        let s = star_split(&matching).unwrap();
        assert_eq!((s.a(), s.b()), (&[2, 3][..], &[0, 1][..]));
        let s = star_split(&Graph::empty(3)).unwrap();
        assert_eq!((s.a(), s.b()), (&[0, 1, 2][..], &[][..]));
        assert!(star_split(&Graph::path(4)).is_err());
    }

    #[test]
    fn threshold_examples() {
        let s = threshold_split(&Graph::star(10), 2, 2).unwrap();
        assert_eq!(s.b(), &[0]);
        assert_eq!(s.a().len(), 10);
        assert_eq!(s.neighbor_bound(), 7);
        let s = threshold_split(&Graph::star(7), 2, 2).unwrap();
        assert!(s.b().is_empty());
        assert!(threshold_split(&Graph::star(3), 1, 2).is_err());
    }

    #[test]
    fn split_contract_is_enforced() {
        let g = Graph::star(3);
        assert!(matches!(
            Split::new(&g, vec![0], vec![1, 2, 3], 2),
            Err(Error::SplitViolation { vertex: 0, count: 3, bound: 2 })
        ));
        assert!(Split::new(&g, vec![0, 1], vec![1, 2, 3], 5).is_err());
        assert!(Split::new(&g, vec![0], vec![1, 2], 5).is_err());
    }

    #[test]
    fn quotient_examples() {
        let g = Graph::cycle(4);
        let singletons: Vec<Vec<usize>> = (0..4).map(|v| vec![v]).collect();
        assert_eq!(quotient(&g, &singletons).unwrap(), g);
        assert_eq!(quotient(&g, &[vec![0, 1, 2, 3]]).unwrap(), Graph::empty(1));
        assert_eq!(quotient(&g, &[vec![0, 2], vec![1, 3]]).unwrap(), Graph::complete(2));
        assert!(quotient(&g, &[vec![0, 1], vec![1, 2, 3]]).is_err());
        assert!(quotient(&g, &[vec![0, 1]]).is_err());
    }

    #[test]
    fn build_instance_examples() {
        let star = Graph::star(5);
        let singletons: Vec<Vec<usize>> = (0..6).map(|v| vec![v]).collect();
        let qi = build_quotient_instance(&star, singletons, 2, None).unwrap();
        assert!(qi.elimination_forest.height() <= 1);
        let path = Graph::path(8);
        let singletons: Vec<Vec<usize>> = (0..8).map(|v| vec![v]).collect();
        assert!(matches!(
            build_quotient_instance(&path, singletons, 2, None),
            Err(Error::TreedepthExceeded { depth: 4, cap: 2 })
        ));
        let qi = build_quotient_instance(&path, vec![(0..8).collect()], 1, None).unwrap();
        assert_eq!(qi.quotient, Graph::empty(1));
    }

    #[test]
    fn supplied_forest_must_cover_quotient() {
        let g = Graph::path(3);
        let parts: Vec<Vec<usize>> = (0..3).map(|v| vec![v]).collect();
        let bad = RootedForest::spanning(vec![None, None, Some(1)]).unwrap();
        assert!(build_quotient_instance(&g, parts.clone(), 3, Some(bad)).is_err());
        let good = RootedForest::spanning(vec![Some(1), None, Some(1)]).unwrap();
        assert!(build_quotient_instance(&g, parts, 3, Some(good)).is_ok());
    }

    #[test]
    fn quotient_split_examples() {
        let star = Graph::star(4);
        let parts: Vec<Vec<usize>> = (0..5).map(|v| vec![v]).collect();
        let forest = RootedForest::spanning(vec![None, Some(0), Some(0), Some(0), Some(0)]).unwrap();
        let qi = build_quotient_instance(&star, parts.clone(), 2, Some(forest)).unwrap();
        let qs = quotient_split(&qi).unwrap();
        assert_eq!(qs.split.b(), &[0]);
        assert_eq!(qs.split.a(), &[1, 2, 3, 4]);
        assert_eq!(qs.split.neighbor_bound(), 1);
        assert_eq!(qs.a_forest.height(), 0);
        assert_eq!(qs.a_components.len(), 4);

        let edgeless = Graph::empty(3);
        let parts: Vec<Vec<usize>> = (0..3).map(|v| vec![v]).collect();
        let qi = build_quotient_instance(&edgeless, parts, 1, None).unwrap();
        let qs = quotient_split(&qi).unwrap();
        assert!(qs.split.a().is_empty());
        assert_eq!(qs.split.b(), &[0, 1, 2]);
    }

    #[test]
    fn quotient_split_reproduces_star_split() {
        let g = Graph::from_edges(9, [(0, 1), (0, 2), (0, 3), (4, 5), (6, 7), (6, 8)]).unwrap();
        let parts: Vec<Vec<usize>> = (0..9).map(|v| vec![v]).collect();
        let qi = build_quotient_instance(&g, parts, 2, None).unwrap();
        let qs = quotient_split(&qi).unwrap();
        let star = star_split(&g).unwrap();
        assert_eq!(qs.split.b(), star.b());
        assert_eq!(qs.split.a(), star.a());
    }

    #[test]
    fn hierarchy_descends() {
        let g = Graph::star(20);
        let levels = threshold_hierarchy(&g, 2, 3).unwrap();
        assert_eq!(levels[0].0, 3);
        assert_eq!(levels[0].1.b(), &[0]);
        assert_eq!(levels.len(), 2);
        assert!(levels[1].1.b().is_empty());
    }

    #[test]
    fn audit_on_small_graphs() {
        assert_eq!(audit_threshold_split(&Graph::star(10), 2, 2).unwrap(), Some(true));
        let tree = crate::exhaustive::qary_tree(2, 2);
        assert_eq!(audit_threshold_split(&tree, 2, 2).unwrap(), None);
    }
}
