use std::collections::BTreeSet;
use std::f64::consts::E;
use std::time::Instant;

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use super::{rng_from_seed, verified, SolverParams, SolverRng};
use crate::error::{Error, Result};
use crate::exhaustive::{BudgetKind, SearchOutcome, SearchStats};
use crate::graph::{family_to_adapted, Color, CooperativeColoring, GraphFamily};

/// The symmetric local-lemma condition `e p (D + 1) <= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LllCheck {
    /// Upper bound on each bad event's probability.
    pub p: f64,
    /// Upper bound on the number of other events each event depends on.
    pub dependency_degree: u64,
    pub satisfied: bool,
}

/// Evaluates `e p (D + 1) <= 1` for `0 <= p <= 1`.
pub fn lll_condition(p: f64, dependency_degree: u64) -> LllCheck {
    debug_assert!((0.0..=1.0).contains(&p));
    // Compared as p (D+1) <= 1/e so the boundary p = 1/(2e), D = 1 is exact.
    let satisfied = p * (dependency_degree as f64 + 1.0) <= 1.0 / E;
    LllCheck { p, dependency_degree, satisfied }
}

/// The condition for the per-edge bad events of [`lll_solve`]: an edge is bad
/// with probability at most `1/l_min^2` and shares an endpoint with at most
/// `2 l_max d_max` other edges.
pub fn family_lll_condition(family: &GraphFamily) -> LllCheck {
    let l_min = family.min_membership().max(1) as f64;
    let dependency = 2 * family.max_membership() as u64 * family.max_degree() as u64;
    lll_condition(1.0 / (l_min * l_min), dependency)
}

/// Moser-Tardos resampling on the adapted translation. Each vertex starts with
/// a uniform membership; while some edge of color `c` has both endpoints
/// colored `c`, the lowest such edge has both endpoints resampled.
pub fn lll_solve(family: &GraphFamily, params: &SolverParams) -> Result<SearchOutcome> {
    params.validate()?;
    let start = Instant::now();
    let n = family.universe_size();
    if let Some(v) = (0..n).find(|&v| family.memberships(v).is_empty()) {
        return Err(Error::Precondition(format!("vertex {v} has no memberships")));
    }
    let m = family_to_adapted(family);
    let edges = m.edges();
    let mut incident = vec![Vec::new(); n];
    for (i, e) in edges.iter().enumerate() {
        incident[e.u].push(i);
        incident[e.v].push(i);
    }
    let mut rng = rng_from_seed(params.seed);
    let draw = |v: usize, rng: &mut SolverRng| -> Color {
        *family.memberships(v).choose(rng).expect("memberships are nonempty")
    };
    let mut color: Vec<Color> = (0..n).map(|v| draw(v, &mut rng)).collect();
    let is_bad = |i: usize, color: &[Color]| {
        let e = edges[i];
        color[e.u] == e.color && color[e.v] == e.color
    };
    let mut bad: BTreeSet<usize> = (0..edges.len()).filter(|&i| is_bad(i, &color)).collect();
    let mut stats = SearchStats::default();
    while let Some(&i) = bad.iter().next() {
        if stats.resamples >= params.resample_cap {
            stats.budget_exhausted = Some(BudgetKind::Resamples);
            stats.wall_time = start.elapsed();
            return Ok(SearchOutcome::unknown(stats));
        }
        stats.resamples += 1;
        let e = edges[i];
        for v in [e.u, e.v] {
            color[v] = draw(v, &mut rng);
            for &j in &incident[v] {
                if is_bad(j, &color) {
                    bad.insert(j);
                } else {
                    bad.remove(&j);
                }
            }
        }
    }
    stats.wall_time = start.elapsed();
    verified(family, CooperativeColoring::from_colors(color), stats)
}
