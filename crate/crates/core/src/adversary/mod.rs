//! Lower-bound constructions as executable adversaries.
//!
//! An adversary only sees what an online algorithm exposes through
//! [`OnlineRlp`](crate::online::OnlineRlp) or
//! [`OnlinePmax`](crate::online::OnlinePmax): the answer to each request and
//! the public assignment. It picks the next request from that view alone.

mod fig1;
mod pmax;
mod rlp;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::model::{is_d_satisfied, Lightpath, NodeCap, NodeId, Topology};
use crate::online::{OnlinePmax, OnlineRlp, PmaxDecision};
use crate::pmax::covers_trimmed_edges;
use crate::ratio::{fraction_string, RatioValue};

pub use fig1::{adv_setcover_fig1, build_rlp_from_setcover, CoverNormalizer, SetCoverRlp};
pub use pmax::{adv_pmax_feasible, adv_pmax_infeasible};
pub use rlp::{adv_rlp_det_lb2, adv_rlp_yao, YaoDistribution, YaoOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Decision {
    Rlp { opened: Vec<NodeId> },
    Pmax(PmaxDecision),
}

#[derive(Debug, Clone, Serialize)]
pub struct AdversaryTrace {
    pub construction: String,
    pub algorithm: String,
    pub param: usize,
    pub requests: Vec<Lightpath>,
    pub decisions: Vec<Decision>,
    /// Locations used (RLP) or paths satisfied (PMAX).
    pub online: usize,
    pub offline: usize,
    /// True when the offline value was confirmed by an oracle or witness.
    pub offline_verified: bool,
    pub ratio: RatioValue,
    pub ratio_exact: String,
    /// Counting quantities of the construction (`x`, `h`, `l`, ...).
    pub quantities: BTreeMap<String, usize>,
    pub note: Option<String>,
    #[serde(skip)]
    pub instance: Instance,
}

impl AdversaryTrace {
    fn finish(mut self, ratio: RatioValue) -> Self {
        self.ratio = ratio;
        self.ratio_exact = fraction_string(&ratio);
        self
    }
}

/// Request/response log shared by the constructions.
struct Session {
    topology: Topology,
    d: usize,
    k: NodeCap,
    requests: Vec<Lightpath>,
    decisions: Vec<Decision>,
}

impl Session {
    fn new(topology: Topology, d: usize, k: NodeCap) -> Self {
        Self { topology, d, k, requests: Vec::new(), decisions: Vec::new() }
    }

    /// Next lightpath id in arrival order.
    fn next_path(&self, from: NodeId, to: NodeId) -> Lightpath {
        Lightpath::between(self.requests.len(), from, to)
    }

    fn present_rlp<A: OnlineRlp + ?Sized>(&mut self, alg: &mut A, path: Lightpath) -> Result<Vec<NodeId>> {
        let opened = alg.present(&path)?;
        if !is_d_satisfied(&path, alg.assignment(), self.d) {
            return Err(Error::InvalidAlgorithm(format!("{} left lightpath {} unsatisfied", alg.name(), path.id)));
        }
        self.requests.push(path);
        self.decisions.push(Decision::Rlp { opened: opened.clone() });
        Ok(opened)
    }

    fn present_pmax<A: OnlinePmax + ?Sized>(&mut self, alg: &mut A, path: Lightpath) -> Result<bool> {
        let decision = alg.present(&path)?;
        if decision.is_satisfied() && !covers_trimmed_edges(&path, |v| alg.assignment().has(v, path.id)) {
            return Err(Error::InvalidAlgorithm(format!(
                "{} accepted lightpath {} without serving it",
                alg.name(),
                path.id
            )));
        }
        let ok = decision.is_satisfied();
        self.requests.push(path);
        self.decisions.push(Decision::Pmax(decision));
        Ok(ok)
    }

    fn satisfied_count(&self) -> usize {
        self.decisions.iter().filter(|d| matches!(d, Decision::Pmax(p) if p.is_satisfied())).count()
    }

    fn into_trace(self, construction: &str, algorithm: String, param: usize) -> Result<AdversaryTrace> {
        let instance =
            Instance::new(self.topology, self.d, self.k, self.requests.iter().map(|p| p.nodes.clone()).collect())?;
        Ok(AdversaryTrace {
            construction: construction.into(),
            algorithm,
            param,
            requests: self.requests,
            decisions: self.decisions,
            online: 0,
            offline: 0,
            offline_verified: false,
            ratio: RatioValue::of(0, 0),
            ratio_exact: String::new(),
            quantities: BTreeMap::new(),
            note: None,
            instance,
        })
    }
}
