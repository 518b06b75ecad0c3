//! Greedy online path maximization on a path topology with `d = 2`, `k = 1`.
//!
//! With `d = 2` a lightpath is satisfied iff its regenerators form a vertex
//! cover of its trimmed edges (all edges except the first and the last).
//! A request is rejected when two consecutive internal nodes are already
//! occupied; otherwise a left-to-right sweep places regenerators, jumping two
//! nodes when the target is free and one node when it is not.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{is_d_satisfied, Lightpath, NodeCap, NodeId, PathId, RegeneratorAssignment, Topology};
use crate::online::{OnlinePmax, PmaxDecision};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PmaxVariant {
    /// Single sweep starting from the left endpoint.
    #[default]
    Sweep,
    /// Also tries a sweep whose first regenerator is the leftmost internal
    /// node, and keeps whichever uses fewer regenerators.
    TwoStart,
}

impl std::str::FromStr for PmaxVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sweep" => Ok(PmaxVariant::Sweep),
            "two-start" => Ok(PmaxVariant::TwoStart),
            other => Err(Error::InvalidConfig(format!("unknown pmax variant {other:?}"))),
        }
    }
}

/// Consecutive pairs of internal vertices.
pub fn trimmed_edges(path: &Lightpath) -> Vec<(NodeId, NodeId)> {
    path.internal().windows(2).map(|w| (w[0], w[1])).collect()
}

/// Vertex-cover formulation of 2-satisfaction.
pub fn covers_trimmed_edges(path: &Lightpath, hit: impl Fn(NodeId) -> bool) -> bool {
    trimmed_edges(path).into_iter().all(|(u, v)| hit(u) || hit(v))
}

#[derive(Debug, Clone)]
pub struct PmaxState {
    topology: Topology,
    variant: PmaxVariant,
    assignment: RegeneratorAssignment,
    satisfied: Vec<PathId>,
    unsatisfied: Vec<PathId>,
}

impl PmaxState {
    pub fn new(topology: &Topology, d: usize, k: NodeCap, variant: PmaxVariant) -> Result<Self> {
        if !topology.is_path() {
            return Err(Error::NotPathTopology);
        }
        if d != 2 || k != NodeCap::Bounded(1) {
            return Err(Error::InvalidConfig(format!("greedy path maximization needs d=2, k=1; got d={d}, k={k:?}")));
        }
        Ok(Self {
            topology: topology.clone(),
            variant,
            assignment: RegeneratorAssignment::new(NodeCap::Bounded(1)),
            satisfied: Vec::new(),
            unsatisfied: Vec::new(),
        })
    }

    pub fn sweep(topology: &Topology) -> Result<Self> {
        Self::new(topology, 2, NodeCap::Bounded(1), PmaxVariant::Sweep)
    }

    pub fn variant(&self) -> PmaxVariant {
        self.variant
    }

    pub fn satisfied(&self) -> &[PathId] {
        &self.satisfied
    }

    pub fn unsatisfied(&self) -> &[PathId] {
        &self.unsatisfied
    }

    /// `(|S|, |U|)`
    pub fn counts(&self) -> (usize, usize) {
        (self.satisfied.len(), self.unsatisfied.len())
    }

    pub fn pmax_present(&mut self, path: &Lightpath) -> Result<PmaxDecision> {
        self.topology.check_path(path)?;
        let (lo, hi) = path.span();
        if hi - lo < 3 {
            self.satisfied.push(path.id);
            return Ok(PmaxDecision::Satisfied(Vec::new()));
        }
        let occupied = |v: NodeId| self.assignment.is_occupied(v);
        if (lo + 1..hi - 1).any(|v| occupied(v) && occupied(v + 1)) {
            self.unsatisfied.push(path.id);
            return Ok(PmaxDecision::Rejected);
        }

        let mut plan = self.plan_sweep(lo, hi, None)?;
        if self.variant == PmaxVariant::TwoStart && !occupied(lo + 1) {
            let alt = self.plan_sweep(lo, hi, Some(lo + 1))?;
            if alt.len() < plan.len() {
                plan = alt;
            }
        }
        for &v in &plan {
            self.assignment.place_internal(v, path.id)?;
        }
        debug_assert!(is_d_satisfied(path, &self.assignment, 2));
        self.satisfied.push(path.id);
        Ok(PmaxDecision::Satisfied(plan))
    }

    /// Runs the allocation sweep over the span `lo..=hi` without committing.
    fn plan_sweep(&self, lo: NodeId, hi: NodeId, first: Option<NodeId>) -> Result<Vec<NodeId>> {
        let occupied = |v: NodeId| self.assignment.is_occupied(v);
        let mut planned: Vec<NodeId> = Vec::new();
        let mut chosen = BTreeSet::new();
        let mut last = lo;
        if let Some(v) = first {
            planned.push(v);
            chosen.insert(v);
            last = v;
        }
        let covered =
            |chosen: &BTreeSet<NodeId>| (lo + 1..hi - 1).all(|v| chosen.contains(&v) || chosen.contains(&(v + 1)));
        while !covered(&chosen) {
            let next = if last + 2 < hi && !occupied(last + 2) { last + 2 } else { last + 1 };
            if next >= hi || occupied(next) {
                return Err(Error::Invariant(format!("sweep reached unusable node {next} on span {lo}..{hi}")));
            }
            planned.push(next);
            chosen.insert(next);
            last = next;
        }
        Ok(planned)
    }
}

impl OnlinePmax for PmaxState {
    fn name(&self) -> String {
        match self.variant {
            PmaxVariant::Sweep => "pmax".into(),
            PmaxVariant::TwoStart => "pmax-two-start".into(),
        }
    }

    fn present(&mut self, path: &Lightpath) -> Result<PmaxDecision> {
        self.pmax_present(path)
    }

    fn assignment(&self) -> &RegeneratorAssignment {
        &self.assignment
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn state(n: usize) -> PmaxState {
        PmaxState::sweep(&Topology::path(n).unwrap()).unwrap()
    }

    #[test]
    fn three_identical_paths() {
        let mut s = state(4);
        assert_eq!(s.pmax_present(&Lightpath::between(0, 0, 3)).unwrap(), PmaxDecision::Satisfied(vec![2]));
        assert_eq!(s.pmax_present(&Lightpath::between(1, 0, 3)).unwrap(), PmaxDecision::Satisfied(vec![1]));
        assert_eq!(s.pmax_present(&Lightpath::between(2, 0, 3)).unwrap(), PmaxDecision::Rejected);
        assert_eq!(s.counts(), (2, 1));
    }

    #[test]
    fn sweep_on_empty_line() {
        let mut s = state(6);
        let p = Lightpath::between(0, 0, 5);
        assert_eq!(s.pmax_present(&p).unwrap(), PmaxDecision::Satisfied(vec![2, 4]));
        assert!(covers_trimmed_edges(&p, |v| s.assignment().has(v, 0)));
    }

    #[test]
    fn sweep_steps_around_occupied_node() {
        let mut s = state(6);
        // A short path whose single regenerator lands on node 2.
        assert_eq!(s.pmax_present(&Lightpath::between(0, 0, 3)).unwrap(), PmaxDecision::Satisfied(vec![2]));
        let p = Lightpath::between(1, 0, 5);
        assert_eq!(s.pmax_present(&p).unwrap(), PmaxDecision::Satisfied(vec![1, 3]));
        assert!(is_d_satisfied(&p, s.assignment(), 2));
    }

    #[test]
    fn paths_with_one_internal_node_are_free() {
        let mut s = state(6);
        assert_eq!(s.pmax_present(&Lightpath::between(0, 1, 3)).unwrap(), PmaxDecision::Satisfied(vec![]));
        assert_eq!(s.pmax_present(&Lightpath::between(1, 4, 5)).unwrap(), PmaxDecision::Satisfied(vec![]));
        assert_eq!(s.counts(), (2, 0));
        assert_eq!(s.assignment().cost(), 0);
    }

    #[test]
    fn reversed_path_sweeps_left_to_right() {
        let mut s = state(6);
        assert_eq!(s.pmax_present(&Lightpath::between(0, 5, 0)).unwrap(), PmaxDecision::Satisfied(vec![2, 4]));
    }

    #[test]
    fn two_start_keeps_sweep_on_ties() {
        let t = Topology::path(8).unwrap();
        let mut sweep = PmaxState::new(&t, 2, NodeCap::Bounded(1), PmaxVariant::Sweep).unwrap();
        let mut two = PmaxState::new(&t, 2, NodeCap::Bounded(1), PmaxVariant::TwoStart).unwrap();
        // Occupy node 4 first (internal of 2..=5: sweep picks 4).
        for s in [&mut sweep, &mut two] {
            assert_eq!(s.pmax_present(&Lightpath::between(0, 2, 5)).unwrap(), PmaxDecision::Satisfied(vec![4]));
        }
        // Internal 1..=5 with 4 taken: sweep goes 2, then 3 (4 busy), then 5.
        let p = Lightpath::between(1, 0, 6);
        assert_eq!(sweep.pmax_present(&p).unwrap(), PmaxDecision::Satisfied(vec![2, 3, 5]));
        // Starting at 1 gives 1, 3, 5: same size, so the sweep's plan is kept.
        let got = two.pmax_present(&p).unwrap();
        assert_eq!(got, PmaxDecision::Satisfied(vec![2, 3, 5]));
        assert!(is_d_satisfied(&p, two.assignment(), 2));
    }

    #[test]
    fn config_errors() {
        let t = Topology::path(5).unwrap();
        assert!(PmaxState::new(&t, 3, NodeCap::Bounded(1), PmaxVariant::Sweep).is_err());
        assert!(PmaxState::new(&t, 2, NodeCap::Unbounded, PmaxVariant::Sweep).is_err());
        let ring = Topology::ring(5).unwrap();
        assert_eq!(PmaxState::sweep(&ring).unwrap_err(), Error::NotPathTopology);
        assert_eq!("two-start".parse::<PmaxVariant>().unwrap(), PmaxVariant::TwoStart);
        assert!("x".parse::<PmaxVariant>().is_err());
    }
}
