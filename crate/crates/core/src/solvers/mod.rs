//! Randomized cooperative-coloring solvers and instance generators.
//!
//! Every solver returns [`SearchOutcome`]: `Sat` carries a witness that has
//! passed [`verify_cooperative`](crate::graph::verify_cooperative); running out
//! of resamples gives `Unknown`. None of them can prove non-colorability.

pub mod generate;
mod greedy;
mod lll;
mod partition;

pub use generate::{sample_random_family, sample_random_graph, sample_random_star_family};
pub use greedy::greedy_solve;
pub use lll::{family_lll_condition, lll_condition, lll_solve, LllCheck};
pub use partition::{
    partition_solve_generic, star_partition_solve, ExactSubSolver, GreedySubSolver, LllSubSolver,
    PartitionState, StarPartition, SubSolver,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exhaustive::SearchOutcome;
use crate::graph::{verify_cooperative, CooperativeColoring, GraphFamily};

pub type SolverRng = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> SolverRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverParams {
    /// Threshold factor for heavy vertices in the partition procedures.
    pub epsilon: f64,
    /// Size of each heavy vertex's color inventory.
    pub inventory_size: usize,
    /// Maximum number of resampling steps before giving up.
    pub resample_cap: u64,
    pub seed: u64,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams { epsilon: 0.5, inventory_size: 1, resample_cap: 1_000_000, seed: 0 }
    }
}

impl SolverParams {
    pub fn with_seed(seed: u64) -> Self {
        SolverParams { seed, ..SolverParams::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0 && self.epsilon <= 1.0) {
            return Err(Error::Precondition(format!("epsilon {} must lie in (0, 1]", self.epsilon)));
        }
        if self.inventory_size == 0 || self.resample_cap == 0 {
            return Err(Error::Precondition("inventory size and resample cap must be positive".into()));
        }
        Ok(())
    }
}

/// Turns a claimed witness into an outcome, refusing unverified colorings.
pub(crate) fn verified(
    family: &GraphFamily,
    witness: CooperativeColoring,
    stats: crate::exhaustive::SearchStats,
) -> Result<SearchOutcome> {
    verify_cooperative(family, &witness).map_err(|v| Error::InvalidWitness(v.to_string()))?;
    Ok(SearchOutcome::sat(witness, stats))
}
