//! Recursive edge-colored graphs with star-forest color classes and no
//! adapted coloring.
//!
//! Level 1 is a single edge of color 1. Level `t` takes `t` disjoint copies
//! `H_1..H_t` of level `t-1`, recolors copy `H_i` through [`shift`] so that it
//! avoids color `i`, and adds an apex joined to every vertex of `H_i` by a
//! color-`i` edge. Vertices are numbered copy by copy with the apex last.

use crate::error::{Error, Result};
use crate::graph::{Color, EdgeColoredMultigraph, Graph, GraphFamily, Member, Mode, Vertex};

/// Default largest `t` that [`build_construction`] materializes.
pub const DEFAULT_CAP: usize = 8;
/// Largest `t` that may be materialized at all (`V_10` is about `10^7`).
pub const HARD_CAP: usize = 10;

/// Maps `x` in `1..=t` into `1..=t+1` skipping `i`: `x` below `i` is kept,
/// anything else moves up by one.
pub fn shift(i: Color, x: Color, t: usize) -> Result<Color> {
    if !(1..=t + 1).contains(&i) {
        return Err(Error::ColorOutOfRange { color: i, palette: t + 1 });
    }
    if !(1..=t).contains(&x) {
        return Err(Error::ColorOutOfRange { color: x, palette: t });
    }
    Ok(if x < i { x } else { x + 1 })
}

/// Sizes of level `t`: `V_1 = 2`, `V_t = t V_{t-1} + 1`, `Δ_t = V_{t-1}`, and
/// edge count `E_1 = 1`, `E_t = t E_{t-1} + t V_{t-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConstructionStats {
    pub t: usize,
    pub vertex_count: u128,
    pub max_mono_degree: u128,
    pub edge_count: u128,
}

pub fn construction_stats(t: usize) -> Result<ConstructionStats> {
    if t == 0 {
        return Err(Error::Precondition("t must be at least 1".into()));
    }
    let overflow = || Error::Overflow(format!("construction statistics for t = {t}"));
    let (mut v, mut delta, mut e) = (2u128, 1u128, 1u128);
    for s in 2..=t {
        let s = s as u128;
        let next_v = s.checked_mul(v).and_then(|x| x.checked_add(1)).ok_or_else(overflow)?;
        let next_e = s
            .checked_mul(e)
            .and_then(|x| s.checked_mul(v).and_then(|y| x.checked_add(y)))
            .ok_or_else(overflow)?;
        delta = v;
        v = next_v;
        e = next_e;
    }
    Ok(ConstructionStats { t, vertex_count: v, max_mono_degree: delta, edge_count: e })
}

/// Where a non-apex vertex sits: copy `copy` (1-based) at `position` inside
/// that copy's numbering of level `t-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CopyPosition {
    pub copy: usize,
    pub position: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledConstruction {
    pub t: usize,
    pub multigraph: EdgeColoredMultigraph,
    /// Absent for `t = 1`.
    pub apex: Option<Vertex>,
    /// `None` for the apex, and for both vertices when `t = 1`.
    pub copy_map: Vec<Option<CopyPosition>>,
}

impl LabeledConstruction {
    /// Vertices of copy `H_i`.
    pub fn copy_vertices(&self, i: usize) -> Vec<Vertex> {
        (0..self.copy_map.len())
            .filter(|&v| matches!(self.copy_map[v], Some(p) if p.copy == i))
            .collect()
    }

    /// Copy `H_i` with its (shifted) edge colors and no lists.
    pub fn copy_multigraph(&self, i: usize) -> EdgeColoredMultigraph {
        let keep = self.copy_vertices(i);
        let (lo, hi) = (keep.first().copied(), keep.last().copied());
        self.multigraph
            .induced(|v| matches!((lo, hi), (Some(lo), Some(hi)) if (lo..=hi).contains(&v)))
            .0
    }

    /// The construction with its apex removed (unchanged for `t = 1`).
    pub fn apex_deleted(&self) -> EdgeColoredMultigraph {
        match self.apex {
            Some(a) => self.multigraph.without_vertex(a),
            None => self.multigraph.clone(),
        }
    }
}

pub fn build_construction(t: usize) -> Result<LabeledConstruction> {
    build_construction_with_cap(t, DEFAULT_CAP)
}

/// Builds level `t`, refusing `t > cap` (and anything above [`HARD_CAP`]).
pub fn build_construction_with_cap(t: usize, cap: usize) -> Result<LabeledConstruction> {
    if t == 0 {
        return Err(Error::Precondition("t must be at least 1".into()));
    }
    let cap = cap.min(HARD_CAP);
    if t > cap {
        return Err(Error::CapExceeded { what: "construction level t", requested: t, cap });
    }
    let mut n = 2usize;
    let mut edges: Vec<(Vertex, Vertex, Color)> = vec![(0, 1, 1)];
    for s in 2..=t {
        let prev_n = n;
        let apex = s * prev_n;
        let mut next = Vec::with_capacity(s * (edges.len() + prev_n));
        for i in 1..=s {
            let offset = (i - 1) * prev_n;
            for &(u, v, c) in &edges {
                next.push((u + offset, v + offset, shift(i, c, s - 1)?));
            }
            next.extend((0..prev_n).map(|x| (apex, offset + x, i)));
        }
        edges = next;
        n = apex + 1;
    }
    let (apex, copy_map) = if t == 1 {
        (None, vec![None; 2])
    } else {
        let sub = (n - 1) / t;
        let map = (0..n)
            .map(|v| (v < n - 1).then(|| CopyPosition { copy: v / sub + 1, position: v % sub }))
            .collect();
        (Some(n - 1), map)
    };
    let multigraph = EdgeColoredMultigraph::new(n, t, edges, None)?;
    Ok(LabeledConstruction { t, multigraph, apex, copy_map })
}

/// One member per color: member `i` holds exactly the color-`i` edges on the
/// full vertex set.
pub fn extract_star_family(c: &LabeledConstruction) -> GraphFamily {
    let n = c.multigraph.vertex_count();
    let members: Vec<Member> = (1..=c.t)
        .map(|i| Member { name: format!("G{i}"), graph: c.multigraph.color_class(i) })
        .collect();
    let labels = (0..n).map(|v| v.to_string()).collect();
    GraphFamily::new(labels, Mode::Common, members).expect("color classes span the vertex set")
}

/// The unique `t` with `Δ_t <= d < Δ_{t+1}`.
pub fn max_t_for_degree(d: u128) -> usize {
    assert!(d >= 1, "degree bound must be positive");
    let mut t = 1;
    // Δ_{t+1} = V_t grows factorially, so this loop stops well before overflow.
    while let Ok(stats) = construction_stats(t) {
        if stats.vertex_count > d {
            return t;
        }
        t += 1;
    }
    t
}

/// Per color class: whether it is a star forest, and its max degree.
pub fn mono_degree_profile(m: &EdgeColoredMultigraph) -> Vec<(bool, usize)> {
    (1..=m.palette())
        .map(|c| {
            let g: Graph = m.color_class(c);
            (g.is_star_forest(), g.max_degree())
        })
        .collect()
}
