//! The read-only observer interface adversaries use to drive any online
//! algorithm: present a request, then inspect the public assignment.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{Lightpath, NodeId, RegeneratorAssignment};

/// An online algorithm for the location-minimization problem (unbounded `k`).
pub trait OnlineRlp {
    fn name(&self) -> String;

    fn d(&self) -> usize;

    /// Serves `path` and returns the regenerator locations opened for it.
    fn present(&mut self, path: &Lightpath) -> Result<Vec<NodeId>>;

    fn assignment(&self) -> &RegeneratorAssignment;

    fn cost(&self) -> usize {
        self.assignment().cost()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "decision", content = "placements")]
pub enum PmaxDecision {
    Satisfied(Vec<NodeId>),
    Rejected,
}

impl PmaxDecision {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, PmaxDecision::Satisfied(_))
    }
}

/// An online algorithm for the path-maximization problem.
pub trait OnlinePmax {
    fn name(&self) -> String;

    fn present(&mut self, path: &Lightpath) -> Result<PmaxDecision>;

    fn assignment(&self) -> &RegeneratorAssignment;
}

impl<T: OnlineRlp + ?Sized> OnlineRlp for Box<T> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn d(&self) -> usize {
        (**self).d()
    }
    fn present(&mut self, path: &Lightpath) -> Result<Vec<NodeId>> {
        (**self).present(path)
    }
    fn assignment(&self) -> &RegeneratorAssignment {
        (**self).assignment()
    }
}

impl<T: OnlinePmax + ?Sized> OnlinePmax for Box<T> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn present(&mut self, path: &Lightpath) -> Result<PmaxDecision> {
        (**self).present(path)
    }
    fn assignment(&self) -> &RegeneratorAssignment {
        (**self).assignment()
    }
}
