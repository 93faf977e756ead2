use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{mpsc, Arc};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Budget, Meter, SearchOutcome, Status};
use crate::error::{Error, Result};
use crate::graph::{
    family_to_adapted, verify_adapted, Color, CooperativeColoring, EdgeColoredMultigraph,
    GraphFamily,
};

/// Colors are stored as bits of a `u64` domain.
pub const MAX_PALETTE: usize = 64;

/// Tie-breaking among vertices with equally many remaining values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchOrder {
    /// Lowest vertex id first.
    LowestId,
    /// A seeded random ranking of the vertices.
    Seeded(u64),
}

impl SearchOrder {
    /// Stable description of the variable and value order, recorded in
    /// certificates so node counts can be reproduced.
    pub fn fingerprint(&self) -> String {
        match self {
            SearchOrder::LowestId => "mrv/lowest-id/ascending-color".to_string(),
            SearchOrder::Seeded(seed) => format!("mrv/seeded-rank:{seed}/ascending-color"),
        }
    }

    fn ranks(&self, n: usize) -> Vec<usize> {
        match *self {
            SearchOrder::LowestId => (0..n).collect(),
            SearchOrder::Seeded(seed) => {
                let mut order: Vec<usize> = (0..n).collect();
                order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
                let mut rank = vec![0; n];
                for (r, &v) in order.iter().enumerate() {
                    rank[v] = r;
                }
                rank
            }
        }
    }
}

/// Exact adapted-coloring search with the colors in `palette` (intersected
/// with the multigraph's own lists, if any).
pub fn solve_adapted_exact(
    m: &EdgeColoredMultigraph,
    palette: &[Color],
    budget: &Budget,
) -> Result<SearchOutcome> {
    let lists: Vec<Vec<Color>> = (0..m.vertex_count())
        .map(|v| palette.iter().copied().filter(|&c| m.lists().is_none() || m.is_allowed(v, c)).collect())
        .collect();
    solve_adapted_lists(m, &lists, budget, SearchOrder::LowestId)
}

/// Cooperative coloring by exact search on the adapted translation, each
/// vertex restricted to its memberships.
pub fn solve_cooperative_exact(family: &GraphFamily, budget: &Budget) -> Result<SearchOutcome> {
    let m = family_to_adapted(family);
    let lists: Vec<Vec<Color>> =
        (0..family.universe_size()).map(|v| family.memberships(v).to_vec()).collect();
    solve_adapted_lists(&m, &lists, budget, SearchOrder::LowestId)
}

/// Backtracking over vertices with per-vertex color domains.
///
/// Assigning color `c` to `u` removes `c` from every unassigned neighbor
/// joined to `u` by a color-`c` edge. The next vertex has the fewest remaining
/// colors (ties by `order`); colors are tried in ascending order.
pub fn solve_adapted_lists(
    m: &EdgeColoredMultigraph,
    lists: &[Vec<Color>],
    budget: &Budget,
    order: SearchOrder,
) -> Result<SearchOutcome> {
    let n = m.vertex_count();
    if lists.len() != n {
        return Err(Error::Precondition(format!("{} color lists for {n} vertices", lists.len())));
    }
    let mut domain = vec![0u64; n];
    for (v, list) in lists.iter().enumerate() {
        for &c in list {
            if c == 0 || c > MAX_PALETTE {
                return Err(Error::ColorOutOfRange { color: c, palette: MAX_PALETTE });
            }
            domain[v] |= 1 << (c - 1);
        }
    }
    let incidence: Vec<Vec<(usize, u64)>> = (0..n)
        .map(|v| {
            m.incident(v)
                .iter()
                .filter(|&&(_, c)| c <= MAX_PALETTE)
                .map(|&(w, c)| (w, 1u64 << (c - 1)))
                .collect()
        })
        .collect();
    let mut search = Search {
        incidence,
        domain,
        value: vec![0; n],
        trail: Vec::new(),
        rank: order.ranks(n),
        meter: Meter::new(budget),
    };
    let status = search.run();
    let stats = search.meter.stats(status.err());
    match status {
        Ok(true) => {
            let colors = search.value.iter().map(|&bit| bit.trailing_zeros() as usize + 1).collect();
            let witness = CooperativeColoring::from_colors(colors);
            let palette = lists.iter().flatten().copied().max().unwrap_or(0).max(m.palette());
            let edges: Vec<_> = m.edges().iter().map(|e| (e.u, e.v, e.color)).collect();
            let checked = EdgeColoredMultigraph::new(n, palette, edges, Some(lists.to_vec()))?;
            verify_adapted(&checked, &witness).map_err(|v| Error::InvalidWitness(v.to_string()))?;
            Ok(SearchOutcome::sat(witness, stats))
        }
        Ok(false) => Ok(SearchOutcome::unsat(stats)),
        Err(_) => Ok(SearchOutcome::unknown(stats)),
    }
}

struct Search<'a> {
    incidence: Vec<Vec<(usize, u64)>>,
    domain: Vec<u64>,
    /// Assigned color bit, 0 while unassigned.
    value: Vec<u64>,
    trail: Vec<(usize, u64)>,
    rank: Vec<usize>,
    meter: Meter<'a>,
}

struct Frame {
    vertex: usize,
    untried: u64,
    mark: usize,
}

impl Search<'_> {
    fn select(&self) -> Option<usize> {
        (0..self.value.len())
            .filter(|&v| self.value[v] == 0)
            .min_by_key(|&v| (self.domain[v].count_ones(), self.rank[v]))
    }

    /// Assigns and propagates; false on a domain wipe-out.
    fn assign(&mut self, v: usize, bit: u64) -> bool {
        self.value[v] = bit;
        for i in 0..self.incidence[v].len() {
            let (w, edge_bit) = self.incidence[v][i];
            if edge_bit == bit && self.value[w] == 0 && self.domain[w] & bit != 0 {
                self.domain[w] &= !bit;
                self.trail.push((w, bit));
                self.meter.propagations += 1;
                if self.domain[w] == 0 {
                    return false;
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (w, bit) = self.trail.pop().expect("trail above mark");
            self.domain[w] |= bit;
        }
    }

    /// `Ok(true)` = Sat, `Ok(false)` = exhausted, `Err` = budget fired.
    fn run(&mut self) -> std::result::Result<bool, super::BudgetKind> {
        if self.domain.contains(&0) {
            return Ok(false);
        }
        let mut stack: Vec<Frame> = Vec::new();
        loop {
            match self.select() {
                None => return Ok(true),
                Some(v) => {
                    stack.push(Frame { vertex: v, untried: self.domain[v], mark: self.trail.len() })
                }
            }
            loop {
                let Some(frame) = stack.last_mut() else { return Ok(false) };
                let (v, mark) = (frame.vertex, frame.mark);
                if frame.untried == 0 {
                    stack.pop();
                    self.value[v] = 0;
                    self.undo(mark);
                    continue;
                }
                let bit = frame.untried & frame.untried.wrapping_neg();
                frame.untried &= !bit;
                self.value[v] = 0;
                self.undo(mark);
                if let Some(kind) = self.meter.tick() {
                    return Err(kind);
                }
                if self.assign(v, bit) {
                    break;
                }
            }
        }
    }
}

/// Runs `workers` independent searches (worker 0 uses [`SearchOrder::LowestId`],
/// the others seeded rankings derived from `seed`) and returns the first
/// definitive outcome with the order that produced it. If none is definitive
/// the lowest-id worker's `Unknown` is returned.
pub fn solve_adapted_portfolio(
    m: &EdgeColoredMultigraph,
    lists: &[Vec<Color>],
    budget: &Budget,
    workers: usize,
    seed: u64,
) -> Result<(SearchOutcome, SearchOrder)> {
    let workers = workers.max(1);
    if workers == 1 {
        return Ok((solve_adapted_lists(m, lists, budget, SearchOrder::LowestId)?, SearchOrder::LowestId));
    }
    let stop = Arc::new(AtomicBool::new(false));
    let orders: Vec<SearchOrder> = (0..workers)
        .map(|w| if w == 0 { SearchOrder::LowestId } else { SearchOrder::Seeded(seed.wrapping_add(w as u64)) })
        .collect();
    let (tx, rx) = mpsc::channel();
    std::thread::scope(|scope| {
        for &order in &orders {
            let tx = tx.clone();
            let budget = Budget { cancel: Some(stop.clone()), ..budget.clone() };
            scope.spawn(move || {
                let _ = tx.send((order, solve_adapted_lists(m, lists, &budget, order)));
            });
        }
        drop(tx);
        let mut fallback = None;
        let mut chosen = None;
        for (order, result) in rx {
            let outcome = result?;
            if outcome.status != Status::Unknown {
                if chosen.is_none() {
                    stop.store(true, Ordering::Relaxed);
                    chosen = Some((outcome, order));
                }
            } else if order == SearchOrder::LowestId {
                fallback = Some((outcome, order));
            }
        }
        Ok(chosen.or(fallback).expect("the lowest-id worker always reports"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::build_construction;
    use crate::graph::Graph;

    #[test]
    fn single_edge_one_color_is_unsat() {
        let c = build_construction(1).unwrap();
        let out = solve_adapted_exact(&c.multigraph, &[1], &Budget::unlimited()).unwrap();
        assert_eq!(out.status, Status::Unsat);
        assert!(out.witness.is_none());
    }

    #[test]
    fn single_edge_two_colors_is_sat() {
        let c = build_construction(1).unwrap();
        let out = solve_adapted_exact(&c.multigraph, &[1, 2], &Budget::unlimited()).unwrap();
        assert_eq!(out.status, Status::Sat);
        // Ascending values: vertex 0 takes 1, vertex 1 loses 1 and takes 2.
        assert_eq!(out.witness.unwrap(), CooperativeColoring::from_colors(vec![1, 2]));
    }

    #[test]
    fn level_three_is_unsat() {
        let c = build_construction(3).unwrap();
        let out = solve_adapted_exact(&c.multigraph, &[1, 2, 3], &Budget::unlimited()).unwrap();
        assert_eq!(out.status, Status::Unsat);
        assert_eq!(out.stats.budget_exhausted, None);
    }

    #[test]
    fn budget_gives_unknown_never_unsat() {
        let c = build_construction(3).unwrap();
        let out = solve_adapted_exact(&c.multigraph, &[1, 2, 3], &Budget::nodes(3)).unwrap();
        assert_eq!(out.status, Status::Unknown);
        assert_eq!(out.stats.budget_exhausted, Some(super::super::BudgetKind::Nodes));
    }

    #[test]
    fn cooperative_examples() {
        let b = Budget::unlimited();
        let f2 = crate::construction::extract_star_family(&build_construction(2).unwrap());
        assert_eq!(solve_cooperative_exact(&f2, &b).unwrap().status, Status::Unsat);
        let easy = GraphFamily::common(vec![Graph::complete(2), Graph::empty(2)]).unwrap();
        assert_eq!(solve_cooperative_exact(&easy, &b).unwrap().status, Status::Sat);
        let three = GraphFamily::common(vec![Graph::complete(2); 3]).unwrap();
        let out = solve_cooperative_exact(&three, &b).unwrap();
        assert_eq!(out.witness.unwrap(), CooperativeColoring::from_colors(vec![1, 2]));
    }

    #[test]
    fn empty_list_is_immediately_unsat() {
        let m = EdgeColoredMultigraph::new(1, 1, [], None).unwrap();
        let out = solve_adapted_lists(&m, &[vec![]], &Budget::unlimited(), SearchOrder::LowestId).unwrap();
        assert_eq!(out.status, Status::Unsat);
    }

    #[test]
    fn rejects_wide_palettes() {
        let m = EdgeColoredMultigraph::new(1, 1, [], None).unwrap();
        assert!(solve_adapted_lists(&m, &[vec![65]], &Budget::unlimited(), SearchOrder::LowestId).is_err());
    }

    #[test]
    fn portfolio_agrees() {
        let c = build_construction(3).unwrap();
        let lists = vec![vec![1, 2, 3]; c.multigraph.vertex_count()];
        let (out, _) = solve_adapted_portfolio(&c.multigraph, &lists, &Budget::unlimited(), 3, 9).unwrap();
        assert_eq!(out.status, Status::Unsat);
        let apexless = c.apex_deleted();
        let lists = vec![vec![1, 2, 3]; apexless.vertex_count()];
        let (out, _) = solve_adapted_portfolio(&apexless, &lists, &Budget::unlimited(), 3, 9).unwrap();
        assert_eq!(out.status, Status::Sat);
    }
}
