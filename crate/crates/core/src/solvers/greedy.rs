use std::time::Instant;

use super::verified;
use crate::error::Result;
use crate::exhaustive::{SearchOutcome, SearchStats};
use crate::graph::{CooperativeColoring, GraphFamily};

/// Baseline: in vertex-id order, give each vertex its lowest membership not
/// already taken by a neighbor in that member. `Unknown` if some vertex has
/// no such color.
pub fn greedy_solve(family: &GraphFamily) -> Result<SearchOutcome> {
    let start = Instant::now();
    let n = family.universe_size();
    let mut coloring = CooperativeColoring::unassigned(n);
    let mut stats = SearchStats::default();
    for v in 0..n {
        stats.nodes += 1;
        let pick = family.memberships(v).iter().copied().find(|&c| {
            family.graph(c).neighbors(v).iter().all(|&w| coloring.get(w) != Some(c))
        });
        match pick {
            Some(c) => coloring.set(v, Some(c)),
            None => {
                stats.wall_time = start.elapsed();
                return Ok(SearchOutcome::unknown(stats));
            }
        }
    }
    stats.wall_time = start.elapsed();
    verified(family, coloring, stats)
}
