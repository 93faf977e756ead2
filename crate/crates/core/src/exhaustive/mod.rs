//! Exact searches: adapted/cooperative coloring with UNSAT certification,
//! q-ary tree subgraph search, and exact treedepth.
//!
//! Searches never report `Unsat` unless the whole space was explored; a
//! budget cutoff always yields `Unknown`.

mod coloring;
mod tree;
mod treedepth;

pub use coloring::{
    solve_adapted_exact, solve_adapted_lists, solve_adapted_portfolio, solve_cooperative_exact,
    SearchOrder, MAX_PALETTE,
};
pub use tree::{find_qary_tree, qary_tree, qary_tree_size, TreeEmbedding, QARY_PATTERN_CAP};
pub use treedepth::{
    closure, treedepth_exact, treedepth_exact_with_cap, RootedForest, TREEDEPTH_CAP, TREEDEPTH_HARD_CAP,
};

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::graph::CooperativeColoring;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Sat,
    Unsat,
    Unknown,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Sat => "sat",
            Status::Unsat => "unsat",
            Status::Unknown => "unknown",
        })
    }
}

/// Which limit ended a search early.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BudgetKind {
    Nodes,
    Time,
    Resamples,
    Cancelled,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchStats {
    pub nodes: u64,
    pub propagations: u64,
    pub resamples: u64,
    #[serde(with = "duration_secs")]
    pub wall_time: Duration,
    /// Set iff a budget fired.
    pub budget_exhausted: Option<BudgetKind>,
}

mod duration_secs {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Duration, D::Error> {
        Ok(Duration::from_secs_f64(f64::deserialize(d)?))
    }
}

/// Result of a search or randomized solve. `witness` is present iff
/// `status == Sat`.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome<W = CooperativeColoring> {
    pub status: Status,
    pub witness: Option<W>,
    pub stats: SearchStats,
}

impl<W> SearchOutcome<W> {
    pub fn sat(witness: W, stats: SearchStats) -> Self {
        SearchOutcome { status: Status::Sat, witness: Some(witness), stats }
    }

    pub fn unsat(stats: SearchStats) -> Self {
        SearchOutcome { status: Status::Unsat, witness: None, stats }
    }

    pub fn unknown(stats: SearchStats) -> Self {
        SearchOutcome { status: Status::Unknown, witness: None, stats }
    }

    pub fn is_sat(&self) -> bool {
        self.status == Status::Sat
    }
}

/// Limits for an exact search. The default is unlimited.
#[derive(Clone, Debug, Default)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
    pub cancel: Option<Arc<AtomicBool>>,
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes: Some(max_nodes), ..Budget::default() }
    }

    pub fn with_time(mut self, limit: Duration) -> Self {
        self.max_time = Some(limit);
        self
    }

    pub fn with_cancel(mut self, flag: Arc<AtomicBool>) -> Self {
        self.cancel = Some(flag);
        self
    }
}

/// Node counter that checks the budget on every expansion.
pub(crate) struct Meter<'a> {
    budget: &'a Budget,
    start: Instant,
    pub nodes: u64,
    pub propagations: u64,
}

impl<'a> Meter<'a> {
    pub fn new(budget: &'a Budget) -> Self {
        Meter { budget, start: Instant::now(), nodes: 0, propagations: 0 }
    }

    /// Counts one node; returns the limit that fired, if any.
    pub fn tick(&mut self) -> Option<BudgetKind> {
        self.nodes += 1;
        if let Some(max) = self.budget.max_nodes {
            if self.nodes > max {
                return Some(BudgetKind::Nodes);
            }
        }
        if self.nodes.is_multiple_of(1024) {
            if let Some(limit) = self.budget.max_time {
                if self.start.elapsed() >= limit {
                    return Some(BudgetKind::Time);
                }
            }
            if let Some(flag) = &self.budget.cancel {
                if flag.load(Ordering::Relaxed) {
                    return Some(BudgetKind::Cancelled);
                }
            }
        }
        None
    }

    pub fn stats(&self, exhausted: Option<BudgetKind>) -> SearchStats {
        SearchStats {
            nodes: self.nodes,
            propagations: self.propagations,
            resamples: 0,
            wall_time: self.start.elapsed(),
            budget_exhausted: exhausted,
        }
    }
}
