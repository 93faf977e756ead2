//! Brute-force oracles shared by the integration tests. They only use the
//! plain graph accessors, never the library's verifiers or solvers.

#![allow(dead_code)]

use std::collections::BTreeSet;

use coopcolor::graph::{EdgeColoredMultigraph, GraphFamily, TransversalGraph};

/// Calls `f` on every vector in the product of `choices`.
pub fn for_each_product(choices: &[Vec<usize>], mut f: impl FnMut(&[usize])) {
    if choices.iter().any(Vec::is_empty) {
        return;
    }
    let mut idx = vec![0; choices.len()];
    let mut cur: Vec<usize> = choices.iter().map(|c| c[0]).collect();
    loop {
        f(&cur);
        let mut pos = 0;
        loop {
            if pos == choices.len() {
                return;
            }
            idx[pos] += 1;
            if idx[pos] < choices[pos].len() {
                cur[pos] = choices[pos][idx[pos]];
                break;
            }
            idx[pos] = 0;
            cur[pos] = choices[pos][0];
            pos += 1;
        }
    }
}

/// All cooperative colorings of `family`, read directly off the members.
pub fn family_solutions(family: &GraphFamily) -> BTreeSet<Vec<usize>> {
    let n = family.universe_size();
    let choices: Vec<Vec<usize>> = (0..n).map(|v| family.memberships(v).to_vec()).collect();
    let mut out = BTreeSet::new();
    for_each_product(&choices, |sigma| {
        let ok = family.graphs().enumerate().all(|(i, g)| {
            g.edges().all(|(u, v)| !(sigma[u] == i + 1 && sigma[v] == i + 1))
        });
        if ok {
            out.insert(sigma.to_vec());
        }
    });
    out
}

/// All adapted colorings of `m` drawn from `palette` (and its lists, if any).
pub fn adapted_solutions(m: &EdgeColoredMultigraph, palette: usize) -> BTreeSet<Vec<usize>> {
    let n = m.vertex_count();
    let choices: Vec<Vec<usize>> = (0..n)
        .map(|v| match m.lists() {
            Some(lists) => lists[v].iter().copied().filter(|&c| c <= palette).collect(),
            None => (1..=palette).collect(),
        })
        .collect();
    let mut out = BTreeSet::new();
    for_each_product(&choices, |sigma| {
        if m.edges().iter().all(|e| !(sigma[e.u] == e.color && sigma[e.v] == e.color)) {
            out.insert(sigma.to_vec());
        }
    });
    out
}

/// All independent transversals of `h`, read back as colorings.
pub fn transversal_solutions(h: &TransversalGraph) -> BTreeSet<Vec<usize>> {
    let blocks = h.partitioned.blocks();
    let choices: Vec<Vec<usize>> = blocks.iter().map(|b| b.vertices.clone()).collect();
    let g = h.partitioned.graph();
    let mut out = BTreeSet::new();
    for_each_product(&choices, |chosen| {
        let independent = (0..chosen.len())
            .all(|i| (i + 1..chosen.len()).all(|j| !g.has_edge(chosen[i], chosen[j])));
        if independent {
            out.insert(chosen.iter().map(|&x| h.origin[x].1).collect());
        }
    });
    out
}

/// Whether the family has any cooperative coloring, by enumeration.
pub fn colorable(family: &GraphFamily) -> bool {
    !family_solutions(family).is_empty()
}
