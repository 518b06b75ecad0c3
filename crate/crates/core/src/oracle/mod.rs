//! Exact offline optima used as ground truth for competitive ratios.

mod cover;
mod pmax;
mod stabbing;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::model::{NodeId, PathId};

pub use cover::{exact_set_cover, greedy_set_cover, opt_rlp_general, window_hitting_instance, CoverSolution};
pub use pmax::{is_feasible_pmax, opt_pmax, pmax_feasible_owners, validate_pmax_witness};
pub use stabbing::{opt_rlp_path, path_windows};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OracleMethod {
    IntervalStabbing,
    ExactSetCover,
    GreedyBound,
    Backtracking,
    BruteForce,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Witness {
    /// Regenerator locations serving every path through them.
    Nodes { nodes: BTreeSet<NodeId> },
    /// Selected paths and the single path each occupied node serves.
    Pmax { selected: Vec<PathId>, owners: BTreeMap<NodeId, PathId> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub objective: usize,
    pub witness: Witness,
    pub method: OracleMethod,
    /// False when a size limit forced a heuristic bound.
    pub optimal: bool,
}

impl OracleResult {
    pub fn nodes(&self) -> Option<&BTreeSet<NodeId>> {
        match &self.witness {
            Witness::Nodes { nodes } => Some(nodes),
            Witness::Pmax { .. } => None,
        }
    }
}

/// Size limits above which the exact searches refuse to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleLimits {
    pub max_elements: usize,
    /// Candidate sets left after dominance reduction.
    pub max_candidates: usize,
    pub max_pmax_paths: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self { max_elements: 10_000, max_candidates: 30, max_pmax_paths: 14 }
    }
}
