//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::Rng;

use super::rng_from_seed;
use crate::graph::{Graph, GraphFamily};

/// `k` independent random star forests on `n` common vertices. Each forest
/// repeatedly takes an unused vertex as a center and attaches a uniformly
/// sized set of `1..=d` unused vertices (fewer if not enough remain).
pub fn sample_random_star_family(n: usize, k: usize, d: usize, seed: u64) -> GraphFamily {
    assert!(n >= 1 && k >= 1 && d >= 1, "n, k and d must be positive");
    let mut rng = rng_from_seed(seed);
    let graphs = (0..k)
        .map(|_| {
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let mut edges = Vec::with_capacity(n);
            let mut pos = 0;
            while pos < n {
                let center = order[pos];
                let leaves = rng.gen_range(1..=d).min(n - pos - 1);
                edges.extend(order[pos + 1..pos + 1 + leaves].iter().map(|&leaf| (center, leaf)));
                pos += 1 + leaves;
            }
            Graph::from_edges(n, edges).expect("star forest is valid")
        })
        .collect();
    GraphFamily::common(graphs).expect("members span the common vertex set")
}

/// Erdős-Rényi graph `G(n, p)`.
pub fn sample_random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).expect("random graph is valid")
}

/// A small random family for fuzzing: `k` members with edge probability `p`.
/// With `list_mode`, each vertex joins each member with probability 1/2 (and
/// at least one member), and edges are induced on the members' vertex sets.
pub fn sample_random_family(n: usize, k: usize, p: f64, list_mode: bool, seed: u64) -> GraphFamily {
    assert!(n >= 1 && k >= 1, "n and k must be positive");
    let mut rng = rng_from_seed(seed);
    if !list_mode {
        let graphs = (0..k).map(|_| sample_random_graph(n, p, &mut rng)).collect();
        return GraphFamily::common(graphs).expect("members span the common vertex set");
    }
    let mut member_of = vec![vec![false; n]; k];
    for v in 0..n {
        let forced = rng.gen_range(0..k);
        for (i, row) in member_of.iter_mut().enumerate() {
            row[v] = i == forced || rng.gen_bool(0.5);
        }
    }
    let graphs = member_of
        .iter()
        .map(|row| {
            let full = sample_random_graph(n, p, &mut rng);
            let vertices: Vec<usize> = (0..n).filter(|&v| row[v]).collect();
            let edges: Vec<_> = full.edges().filter(|&(u, v)| row[u] && row[v]).collect();
            Graph::new(n, vertices, edges).expect("induced member is valid")
        })
        .collect();
    GraphFamily::list(n, graphs).expect("every vertex joined a member")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::io::write_instance;

    #[test]
    fn single_vertex_members() {
        let f = sample_random_star_family(1, 3, 5, 7);
        assert_eq!(f.k(), 3);
        assert!(f.graphs().all(|g| g.vertex_count() == 1 && g.edge_count() == 0));
    }

    #[test]
    fn star_family_shape() {
        for seed in 0..20 {
            let f = sample_random_star_family(10, 3, 2, seed);
            for g in f.graphs() {
                assert!(g.is_star_forest());
                assert!(g.max_degree() <= 2);
            }
        }
    }

    #[test]
    fn deterministic_per_seed() {
        let a = write_instance(&sample_random_star_family(50, 4, 6, 11));
        let b = write_instance(&sample_random_star_family(50, 4, 6, 11));
        let c = write_instance(&sample_random_star_family(50, 4, 6, 12));
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn list_families_cover_everything() {
        for seed in 0..20 {
            let f = sample_random_family(7, 3, 0.4, true, seed);
            assert!(f.min_membership() >= 1);
        }
    }
}
