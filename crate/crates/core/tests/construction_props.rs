mod common;

use coopcolor::construction::{build_construction, construction_stats, extract_star_family, shift};
use coopcolor::graph::{family_to_adapted, verify_adapted, CooperativeColoring};
use proptest::prelude::*;

/// (V_t, Delta_t, E_t) by direct iteration.
fn recurrence(t: usize) -> (u128, u128, u128) {
    let (mut v, mut d, mut e) = (2u128, 1u128, 1u128);
    for s in 2..=t as u128 {
        let prev_v = v;
        d = prev_v;
        e = s * e + s * prev_v;
        v = s * prev_v + 1;
    }
    (v, d, e)
}

#[test]
fn built_levels_match_recurrence() {
    for t in 1..=6 {
        let c = build_construction(t).unwrap();
        let (v, d, e) = recurrence(t);
        let m = &c.multigraph;
        assert_eq!(m.vertex_count() as u128, v, "t={t}");
        assert_eq!(m.edges().len() as u128, e, "t={t}");
        assert_eq!(m.max_mono_degree() as u128, d, "t={t}");
        assert_eq!(m.palette(), t);
        for color in 1..=t {
            assert!(m.color_class(color).is_star_forest(), "t={t} color={color}");
        }
        let s = construction_stats(t).unwrap();
        assert_eq!((s.vertex_count, s.max_mono_degree, s.edge_count), (v, d, e));
    }
}

#[test]
fn apex_is_joined_to_each_copy_in_its_color() {
    for t in 2..=6 {
        let c = build_construction(t).unwrap();
        let apex = c.apex.unwrap();
        assert_eq!(apex, c.multigraph.vertex_count() - 1);
        for i in 1..=t {
            let copy = c.copy_vertices(i);
            assert_eq!(copy.len() as u128, recurrence(t - 1).0);
            let mut seen: Vec<usize> =
                c.multigraph.incident(apex).iter().filter(|&&(_, col)| col == i).map(|&(w, _)| w).collect();
            seen.sort_unstable();
            assert_eq!(seen, copy, "t={t} i={i}");
            // The apex is the center of a star covering the whole copy.
            assert_eq!(c.multigraph.color_class(i).degree(apex), copy.len());
        }
    }
}

#[test]
fn copies_carry_shifted_colors() {
    for t in 2..=5 {
        let prev = build_construction(t - 1).unwrap();
        let c = build_construction(t).unwrap();
        for i in 1..=t {
            let got: Vec<_> = c.copy_multigraph(i).edges().iter().map(|e| (e.u, e.v, e.color)).collect();
            let mut want: Vec<_> = prev
                .multigraph
                .edges()
                .iter()
                .map(|e| (e.u, e.v, shift(i, e.color, t - 1).unwrap()))
                .collect();
            want.sort_unstable();
            assert_eq!(got, want, "t={t} i={i}");
            assert!(got.iter().all(|&(_, _, col)| col != i));
        }
    }
}

#[test]
fn level_two_has_no_adapted_coloring_by_enumeration() {
    let c = build_construction(2).unwrap();
    assert!(common::adapted_solutions(&c.multigraph, 2).is_empty());
    let f = extract_star_family(&c);
    assert!(common::family_solutions(&f).is_empty());
    let deleted = c.apex_deleted();
    assert!(!common::adapted_solutions(&deleted, 2).is_empty());
}

#[test]
fn extracted_family_mirrors_the_multigraph() {
    for t in 1..=5 {
        let c = build_construction(t).unwrap();
        let f = extract_star_family(&c);
        assert_eq!(family_to_adapted(&f), c.multigraph);
    }
}

proptest! {
    #[test]
    fn shift_is_a_bijection_onto_palette_minus_i(t in 1usize..12, i_raw in 0usize..12) {
        let i = i_raw % (t + 1) + 1;
        let image: Vec<usize> = (1..=t).map(|x| shift(i, x, t).unwrap()).collect();
        let want: Vec<usize> = (1..=t + 1).filter(|&c| c != i).collect();
        prop_assert_eq!(image, want);
    }

    #[test]
    fn every_assignment_at_level_three_is_rejected(raw in prop::collection::vec(1usize..=3, 16)) {
        let c = build_construction(3).unwrap();
        prop_assert!(verify_adapted(&c.multigraph, &CooperativeColoring::from_colors(raw)).is_err());
    }
}
