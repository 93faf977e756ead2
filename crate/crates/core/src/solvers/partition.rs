//! Inventory partition procedure.
//!
//! Each member `G_i` is split into `(A_i, B_i)`. Vertices with many
//! `B`-memberships (more than `epsilon * (l_v - l_A)`) are *heavy*: each
//! samples an inventory `C_u` of its `B`-memberships and is colored from it.
//! Every other vertex is then colored from its *available* `A`-memberships:
//! `j` is unavailable at `v` when a heavy neighbor of `v` in `G_j` took `j`.
//! A vertex with fewer than `l_A` available colors is a bad event; its heavy
//! neighbors resample their inventories until no bad event remains.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::seq::index;
use rand::Rng;

use super::{lll_solve, rng_from_seed, verified, SolverParams, SolverRng};
use crate::decomposition::{star_split, Split, Splitter};
use crate::error::{Error, Result};
use crate::exhaustive::{solve_cooperative_exact, Budget, BudgetKind, SearchOutcome, SearchStats, Status};
use crate::graph::{Color, CooperativeColoring, GraphFamily, Vertex};

/// Colors one side of a partitioned instance.
pub trait SubSolver {
    /// Memberships per vertex the solver needs to guarantee progress.
    fn required_memberships(&self) -> usize {
        1
    }
    fn solve(&self, family: &GraphFamily, rng: &mut SolverRng) -> Result<SearchOutcome>;
    fn name(&self) -> String;
}

/// Lowest free membership in vertex order; exact on edgeless classes.
#[derive(Clone, Copy, Debug, Default)]
pub struct GreedySubSolver;

impl SubSolver for GreedySubSolver {
    fn solve(&self, family: &GraphFamily, _rng: &mut SolverRng) -> Result<SearchOutcome> {
        super::greedy_solve(family)
    }

    fn name(&self) -> String {
        "greedy".into()
    }
}

/// Resampling solver seeded from the caller's generator. Stands in for the
/// non-constructive `2d` bound on bounded-degree classes.
#[derive(Clone, Copy, Debug)]
pub struct LllSubSolver {
    pub resample_cap: u64,
}

impl SubSolver for LllSubSolver {
    fn solve(&self, family: &GraphFamily, rng: &mut SolverRng) -> Result<SearchOutcome> {
        let params = SolverParams { resample_cap: self.resample_cap, seed: rng.gen(), ..SolverParams::default() };
        lll_solve(family, &params)
    }

    fn name(&self) -> String {
        format!("lll(cap={})", self.resample_cap)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ExactSubSolver {
    pub max_nodes: u64,
}

impl SubSolver for ExactSubSolver {
    fn solve(&self, family: &GraphFamily, _rng: &mut SolverRng) -> Result<SearchOutcome> {
        solve_cooperative_exact(family, &Budget::nodes(self.max_nodes))
    }

    fn name(&self) -> String {
        format!("exact(nodes={})", self.max_nodes)
    }
}

/// Uniform `min(size, |pool|)`-subset of `pool`, sorted.
fn sample_inventory(rng: &mut SolverRng, pool: &[Color], size: usize) -> Vec<Color> {
    let amount = size.min(pool.len());
    let mut picked: Vec<Color> = index::sample(rng, pool.len(), amount).iter().map(|i| pool[i]).collect();
    picked.sort_unstable();
    picked
}

fn is_heavy(b_count: usize, memberships: usize, ell_a: usize, epsilon: f64) -> bool {
    b_count as f64 > epsilon * (memberships as f64 - ell_a as f64)
}

/// Snapshot of the star procedure.
#[derive(Clone, Debug, PartialEq)]
pub struct PartitionState {
    /// `(A_i, B_i)` per member.
    pub splits: Vec<Split>,
    /// The heavy set `U`, ascending.
    pub heavy: Vec<Vertex>,
    /// `C_u` for each heavy `u`.
    pub inventories: BTreeMap<Vertex, Vec<Color>>,
    pub assignment: Vec<Option<Color>>,
    /// Vertices currently without an available color.
    pub bad: Vec<Vertex>,
    pub resamples: u64,
}

/// The partition procedure on star forests with leaves in `A`, centers in `B`
/// and edgeless `A`/`B` classes (`l_A = 1`).
pub struct StarPartition<'a> {
    family: &'a GraphFamily,
    params: SolverParams,
    splits: Vec<Split>,
    /// Per vertex: `(j, center of v in G_j)` for each `A`-membership `j`.
    a_links: Vec<Vec<(Color, Option<Vertex>)>>,
    b_members: Vec<Vec<Color>>,
    /// Per center: its non-heavy leaves across all members.
    leaves: Vec<Vec<Vertex>>,
    heavy: Vec<bool>,
    inventories: Vec<Vec<Color>>,
    color: Vec<Option<Color>>,
    bad: BTreeSet<Vertex>,
    rng: SolverRng,
    resamples: u64,
}

impl<'a> StarPartition<'a> {
    /// Splits every member and classifies vertices. Requires star-forest
    /// members and at least two memberships per vertex.
    pub fn new(family: &'a GraphFamily, params: &SolverParams) -> Result<Self> {
        params.validate()?;
        let n = family.universe_size();
        if let Some(v) = (0..n).find(|&v| family.memberships(v).len() < 2) {
            return Err(Error::Precondition(format!("vertex {v} has fewer than 2 memberships")));
        }
        let mut splits = Vec::with_capacity(family.k());
        for (i, member) in family.members().iter().enumerate() {
            let split = star_split(&member.graph).map_err(|_| {
                Error::Precondition(format!("member {} (color {}) is not a star forest", member.name, i + 1))
            })?;
            splits.push(split);
        }
        let mut a_links = vec![Vec::new(); n];
        let mut b_members = vec![Vec::new(); n];
        for (i, split) in splits.iter().enumerate() {
            let color = i + 1;
            let g = family.graph(color);
            for &v in split.a() {
                a_links[v].push((color, g.neighbors(v).first().copied()));
            }
            for &v in split.b() {
                b_members[v].push(color);
            }
        }
        let heavy: Vec<bool> = (0..n)
            .map(|v| is_heavy(b_members[v].len(), family.memberships(v).len(), 1, params.epsilon))
            .collect();
        let mut leaves = vec![Vec::new(); n];
        for v in (0..n).filter(|&v| !heavy[v]) {
            for &(_, center) in &a_links[v] {
                if let Some(c) = center {
                    leaves[c].push(v);
                }
            }
        }
        for list in leaves.iter_mut() {
            list.sort_unstable();
            list.dedup();
        }
        Ok(StarPartition {
            family,
            params: params.clone(),
            splits,
            a_links,
            b_members,
            leaves,
            heavy,
            inventories: vec![Vec::new(); n],
            color: vec![None; n],
            bad: BTreeSet::new(),
            rng: rng_from_seed(params.seed),
            resamples: 0,
        })
    }

    fn draw(&mut self, u: Vertex) {
        let inventory = sample_inventory(&mut self.rng, &self.b_members[u], self.params.inventory_size);
        self.color[u] = inventory.first().copied();
        self.inventories[u] = inventory;
    }

    /// Samples an inventory for every heavy vertex (ascending) and colors it
    /// with the lowest color of its inventory.
    pub fn phase1(&mut self) {
        for u in 0..self.heavy.len() {
            if self.heavy[u] {
                self.draw(u);
            }
        }
    }

    /// Colors the `A`-memberships of `v` that no heavy center has taken.
    pub fn available(&self, v: Vertex) -> Vec<Color> {
        self.a_links[v]
            .iter()
            .filter(|&&(j, center)| !matches!(center, Some(c) if self.heavy[c] && self.color[c] == Some(j)))
            .map(|&(j, _)| j)
            .collect()
    }

    /// For each heavy center adjacent to `v`, the colors of `v` it blocks.
    pub fn blocked_by(&self, v: Vertex) -> BTreeMap<Vertex, Vec<Color>> {
        let mut out: BTreeMap<Vertex, Vec<Color>> = BTreeMap::new();
        for &(j, center) in &self.a_links[v] {
            if let Some(c) = center.filter(|&c| self.heavy[c]) {
                let entry = out.entry(c).or_default();
                if self.color[c] == Some(j) {
                    entry.push(j);
                }
            }
        }
        out
    }

    fn rescan(&mut self, v: Vertex) {
        match self.available(v).first() {
            Some(&j) => {
                self.color[v] = Some(j);
                self.bad.remove(&v);
            }
            None => {
                self.color[v] = None;
                self.bad.insert(v);
            }
        }
    }

    /// Colors every non-heavy vertex with its lowest available color.
    pub fn phase2(&mut self) {
        for v in 0..self.heavy.len() {
            if !self.heavy[v] {
                self.rescan(v);
            }
        }
    }

    /// Handles the lowest bad event: resamples the inventories of the heavy
    /// centers adjacent to it and rescans their leaves. False if none is bad.
    pub fn resample_lowest_bad(&mut self) -> bool {
        let Some(&v) = self.bad.iter().next() else { return false };
        self.resamples += 1;
        let mut centers: Vec<Vertex> = self.a_links[v]
            .iter()
            .filter_map(|&(_, c)| c)
            .filter(|&c| self.heavy[c])
            .collect();
        centers.sort_unstable();
        centers.dedup();
        let mut affected = Vec::new();
        for &c in &centers {
            self.draw(c);
            affected.extend_from_slice(&self.leaves[c]);
        }
        affected.sort_unstable();
        affected.dedup();
        for w in affected {
            self.rescan(w);
        }
        true
    }

    pub fn state(&self) -> PartitionState {
        let heavy: Vec<Vertex> = (0..self.heavy.len()).filter(|&v| self.heavy[v]).collect();
        PartitionState {
            splits: self.splits.clone(),
            inventories: heavy.iter().map(|&u| (u, self.inventories[u].clone())).collect(),
            heavy,
            assignment: self.color.clone(),
            bad: self.bad.iter().copied().collect(),
            resamples: self.resamples,
        }
    }

    /// Runs both phases and resamples until no bad event remains or the cap
    /// is reached.
    pub fn run(mut self) -> Result<SearchOutcome> {
        let start = Instant::now();
        self.phase1();
        self.phase2();
        let mut stats = SearchStats::default();
        while !self.bad.is_empty() {
            if self.resamples >= self.params.resample_cap {
                stats.resamples = self.resamples;
                stats.budget_exhausted = Some(BudgetKind::Resamples);
                stats.wall_time = start.elapsed();
                return Ok(SearchOutcome::unknown(stats));
            }
            self.resample_lowest_bad();
        }
        stats.resamples = self.resamples;
        stats.wall_time = start.elapsed();
        let witness = CooperativeColoring::from_partial(self.color);
        verified(self.family, witness, stats)
    }
}

/// The partition procedure on a family of star forests.
pub fn star_partition_solve(family: &GraphFamily, params: &SolverParams) -> Result<SearchOutcome> {
    StarPartition::new(family, params)?.run()
}

/// The partition procedure with a pluggable splitter and sub-solvers.
///
/// `sub_a` fixes `l_A` through [`SubSolver::required_memberships`];
/// `params.inventory_size` is `l_B`. Without heavy vertices the `A`-family is
/// solved directly. Otherwise, per round: `sub_b` colors the heavy vertices
/// on the inventory-restricted `B`-family, availability is computed, the
/// lowest bad vertex (if any) has its heavy `A`-neighbors resample, and once
/// none is bad `sub_a` colors the rest on their available colors. A failing
/// sub-solver triggers a full inventory resample. Each round that resamples
/// counts against `params.resample_cap`.
pub fn partition_solve_generic(
    family: &GraphFamily,
    splitter: &dyn Splitter,
    sub_a: &dyn SubSolver,
    sub_b: &dyn SubSolver,
    params: &SolverParams,
) -> Result<SearchOutcome> {
    params.validate()?;
    let start = Instant::now();
    let n = family.universe_size();
    let k = family.k();
    let declared = splitter.declared_bound();
    let mut splits = Vec::with_capacity(k);
    for member in family.members() {
        let split = splitter.split(&member.graph)?;
        if split.neighbor_bound() > declared {
            return Err(Error::Precondition(format!(
                "splitter {} produced bound {} above its declared {declared}",
                splitter.name(),
                split.neighbor_bound()
            )));
        }
        splits.push(split);
    }
    let ell_a = sub_a.required_memberships();
    let mut a_members = vec![Vec::new(); n];
    let mut b_members = vec![Vec::new(); n];
    for (i, split) in splits.iter().enumerate() {
        for &v in split.a() {
            a_members[v].push(i + 1);
        }
        for &v in split.b() {
            b_members[v].push(i + 1);
        }
    }
    let heavy: Vec<bool> = (0..n)
        .map(|v| is_heavy(b_members[v].len(), family.memberships(v).len(), ell_a, params.epsilon))
        .collect();
    let mut rng = rng_from_seed(params.seed);
    let mut stats = SearchStats::default();
    let finish = |mut stats: SearchStats, status: Status, witness: Option<CooperativeColoring>| {
        stats.wall_time = start.elapsed();
        match (status, witness) {
            (Status::Sat, Some(w)) => verified(family, w, stats),
            _ => Ok(SearchOutcome::unknown(stats)),
        }
    };

    if !heavy.contains(&true) {
        let keep: Vec<Vec<Vertex>> = splits.iter().map(|s| s.a().to_vec()).collect();
        let (sub, back) = family.restrict(&keep)?;
        let out = sub_a.solve(&sub, &mut rng)?;
        absorb(&mut stats, &out.stats);
        let witness = out.witness.map(|w| lift(&w, &back, n));
        return finish(stats, out.status, witness);
    }

    let heavy_list: Vec<Vertex> = (0..n).filter(|&v| heavy[v]).collect();
    let mut inventories: Vec<Vec<Color>> = vec![Vec::new(); n];
    for &u in &heavy_list {
        inventories[u] = sample_inventory(&mut rng, &b_members[u], params.inventory_size);
    }
    loop {
        // Heavy vertices on their inventories.
        let keep_b: Vec<Vec<Vertex>> = (1..=k)
            .map(|i| heavy_list.iter().copied().filter(|&u| inventories[u].contains(&i)).collect())
            .collect();
        let (sub_b_family, back_b) = family.restrict(&keep_b)?;
        let out_b = sub_b.solve(&sub_b_family, &mut rng)?;
        absorb(&mut stats, &out_b.stats);
        let Some(heavy_coloring) = out_b.witness else {
            if stats.resamples >= params.resample_cap {
                stats.budget_exhausted = Some(BudgetKind::Resamples);
                return finish(stats, Status::Unknown, None);
            }
            stats.resamples += 1;
            for &u in &heavy_list {
                inventories[u] = sample_inventory(&mut rng, &b_members[u], params.inventory_size);
            }
            continue;
        };
        let mut color: Vec<Option<Color>> = vec![None; n];
        for (i, &u) in back_b.iter().enumerate() {
            color[u] = heavy_coloring.get(i);
        }

        // Availability at the remaining vertices.
        let available: Vec<Vec<Color>> = (0..n)
            .map(|v| {
                if heavy[v] {
                    return Vec::new();
                }
                a_members[v]
                    .iter()
                    .copied()
                    .filter(|&j| {
                        family.graph(j).neighbors(v).iter().all(|&u| !(heavy[u] && color[u] == Some(j)))
                    })
                    .collect()
            })
            .collect();
        let bad = (0..n).find(|&v| !heavy[v] && available[v].len() < ell_a);
        if let Some(v) = bad {
            if stats.resamples >= params.resample_cap {
                stats.budget_exhausted = Some(BudgetKind::Resamples);
                return finish(stats, Status::Unknown, None);
            }
            stats.resamples += 1;
            let mut centers: Vec<Vertex> = a_members[v]
                .iter()
                .flat_map(|&j| family.graph(j).neighbors(v).iter().copied())
                .filter(|&u| heavy[u])
                .collect();
            centers.sort_unstable();
            centers.dedup();
            for u in centers {
                inventories[u] = sample_inventory(&mut rng, &b_members[u], params.inventory_size);
            }
            continue;
        }

        // Everything else on its available colors.
        let keep_a: Vec<Vec<Vertex>> = (1..=k)
            .map(|j| (0..n).filter(|&v| !heavy[v] && available[v].contains(&j)).collect())
            .collect();
        let (sub_a_family, back_a) = family.restrict(&keep_a)?;
        let out_a = sub_a.solve(&sub_a_family, &mut rng)?;
        absorb(&mut stats, &out_a.stats);
        match out_a.witness {
            Some(w) => {
                for (i, &v) in back_a.iter().enumerate() {
                    color[v] = w.get(i);
                }
                return finish(stats, Status::Sat, Some(CooperativeColoring::from_partial(color)));
            }
            None => {
                if stats.resamples >= params.resample_cap {
                    stats.budget_exhausted = Some(BudgetKind::Resamples);
                    return finish(stats, Status::Unknown, None);
                }
                stats.resamples += 1;
                for &u in &heavy_list {
                    inventories[u] = sample_inventory(&mut rng, &b_members[u], params.inventory_size);
                }
            }
        }
    }
}

fn absorb(total: &mut SearchStats, part: &SearchStats) {
    total.nodes += part.nodes;
    total.propagations += part.propagations;
}

fn lift(w: &CooperativeColoring, back: &[Vertex], n: usize) -> CooperativeColoring {
    let mut out = CooperativeColoring::unassigned(n);
    for (i, &v) in back.iter().enumerate() {
        out.set(v, w.get(i));
    }
    out
}
