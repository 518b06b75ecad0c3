use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Lightpath, NodeCap, Topology};
use crate::online::OnlineRlp;
use crate::oracle::opt_rlp_path;
use crate::ratio::RatioValue;

use super::{AdversaryTrace, Session};

/// Forces any deterministic algorithm to open two locations where one
/// suffices.
///
/// `P0` spans `d + 1` edges. If the algorithm serves it with one location
/// `v`, the next path also spans `d + 1` edges, ends at `v` and overlaps `P0`
/// as much as possible (leftward on ties). `v` is not internal to it, so a
/// second location is unavoidable, while the center of the union serves
/// both paths.
pub fn adv_rlp_det_lb2<A, F>(d: usize, make: F) -> Result<AdversaryTrace>
where
    A: OnlineRlp,
    F: FnOnce(&Topology) -> Result<A>,
{
    if d < 2 {
        return Err(Error::InvalidConfig(format!("lower-bound adversary needs d >= 2, got {d}")));
    }
    let c = d + 1;
    let topology = Topology::path(3 * d + 3)?;
    let mut alg = make(&topology)?;
    let name = alg.name();
    let mut session = Session::new(topology, d, NodeCap::Unbounded);

    let p0 = session.next_path(c, c + d + 1);
    session.present_rlp(&mut alg, p0)?;
    let mut note = None;
    if alg.cost() == 1 {
        let v = *alg.assignment().locations().iter().next().expect("one location");
        let left_overlap = v - c;
        let right_overlap = c + d + 1 - v;
        let p1 = if left_overlap >= right_overlap {
            session.next_path(v - d - 1, v)
        } else {
            session.next_path(v, v + d + 1)
        };
        session.present_rlp(&mut alg, p1)?;
    } else {
        note = Some("algorithm opened two or more locations on the first path".into());
    }

    let online = alg.cost();
    let oracle = opt_rlp_path(&session.requests, d);
    if oracle.objective != 1 {
        return Err(Error::Invariant(format!("offline optimum {} differs from 1", oracle.objective)));
    }
    let mut trace = session.into_trace("rlp-det-lb2", name, d)?;
    trace.online = online;
    trace.offline = 1;
    trace.offline_verified = true;
    trace.note = note;
    Ok(trace.finish(RatioValue::of(online, 1)))
}

/// The two equally likely request sequences of the randomized lower bound.
#[derive(Debug, Clone, Serialize)]
pub struct YaoDistribution {
    pub d: usize,
    #[serde(skip)]
    pub topology: Topology,
    /// `[P1, P21]` and `[P1, P22]`.
    pub branches: [Vec<Lightpath>; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct YaoOutcome {
    pub costs: [usize; 2],
    pub opt: [usize; 2],
    /// Mean of the two branch costs.
    #[serde(serialize_with = "serialize_ratio")]
    pub expected: Ratio<u64>,
}

fn serialize_ratio<S: serde::Serializer>(r: &Ratio<u64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(*r.numer() as f64 / *r.denom() as f64)
}

/// `P1` has `d + 1` edges; `P21` and `P22` have `d + 1` edges each and share
/// exactly two edges with `P1`, one at each end. Either branch is served by
/// one location at the common internal node.
pub fn adv_rlp_yao(d: usize) -> Result<YaoDistribution> {
    if d < 2 {
        return Err(Error::InvalidConfig(format!("lower-bound distribution needs d >= 2, got {d}")));
    }
    let c = d;
    let topology = Topology::path(3 * d + 1)?;
    let p1 = Lightpath::between(0, c, c + d + 1);
    let p21 = Lightpath::between(1, c + 1 - d, c + 2);
    let p22 = Lightpath::between(1, c + d - 1, c + 2 * d);
    Ok(YaoDistribution { d, topology, branches: [vec![p1.clone(), p21], vec![p1, p22]] })
}

impl YaoDistribution {
    /// Runs a fresh algorithm from `make` on each branch.
    pub fn expected_cost<A, F>(&self, mut make: F) -> Result<YaoOutcome>
    where
        A: OnlineRlp,
        F: FnMut(&Topology) -> Result<A>,
    {
        let mut costs = [0; 2];
        let mut opt = [0; 2];
        for (i, branch) in self.branches.iter().enumerate() {
            let mut alg = make(&self.topology)?;
            let mut session = Session::new(self.topology.clone(), self.d, NodeCap::Unbounded);
            for p in branch {
                session.present_rlp(&mut alg, p.clone())?;
            }
            costs[i] = alg.cost();
            opt[i] = opt_rlp_path(branch, self.d).objective;
        }
        Ok(YaoOutcome { costs, opt, expected: Ratio::new((costs[0] + costs[1]) as u64, 2) })
    }

    /// Both branches as traces, for reporting.
    pub fn traces<A, F>(&self, mut make: F) -> Result<Vec<AdversaryTrace>>
    where
        A: OnlineRlp,
        F: FnMut(&Topology) -> Result<A>,
    {
        let mut out = Vec::new();
        for (i, branch) in self.branches.iter().enumerate() {
            let mut alg = make(&self.topology)?;
            let name = alg.name();
            let mut session = Session::new(self.topology.clone(), self.d, NodeCap::Unbounded);
            for p in branch {
                session.present_rlp(&mut alg, p.clone())?;
            }
            let online = alg.cost();
            let offline = opt_rlp_path(branch, self.d).objective;
            let mut trace = session.into_trace("rlp-yao", name, self.d)?;
            trace.online = online;
            trace.offline = offline;
            trace.offline_verified = true;
            trace.quantities.insert("branch".into(), i + 1);
            out.push(trace.finish(RatioValue::of(online, offline)));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridState;

    #[test]
    fn lb2_against_grid() {
        for d in 2..=8 {
            let t = adv_rlp_det_lb2(d, |t| GridState::deterministic(t, d)).unwrap();
            assert_eq!(t.online, 2, "d={d}");
            assert_eq!(t.offline, 1);
            assert_eq!(t.ratio, RatioValue::of(2, 1));
            assert_eq!(t.requests.len(), 2);
        }
    }

    #[test]
    fn lb2_first_request_for_d2() {
        let t = adv_rlp_det_lb2(2, |t| GridState::deterministic(t, 2)).unwrap();
        assert_eq!(t.requests[0].nodes, vec![3, 4, 5, 6]);
        // Grid opens 4; overlap is larger to the right.
        assert_eq!(t.requests[1].nodes, vec![4, 5, 6, 7]);
    }

    #[test]
    fn yao_branches_share_two_edges() {
        for d in 2..=6 {
            let y = adv_rlp_yao(d).unwrap();
            for b in &y.branches {
                assert_eq!(b[0].edge_count(), d + 1);
                assert_eq!(b[1].edge_count(), d + 1);
                let shared = b[1].nodes.iter().filter(|v| b[0].nodes.contains(v)).count();
                assert_eq!(shared, 3, "two shared edges");
                assert_eq!(opt_rlp_path(b, d).objective, 1);
            }
        }
    }

    #[test]
    fn yao_grid_expected_cost() {
        for d in 2..=6 {
            let y = adv_rlp_yao(d).unwrap();
            let out = y.expected_cost(|t| GridState::deterministic(t, d)).unwrap();
            assert!(out.expected >= Ratio::new(3, 2), "d={d} {out:?}");
        }
    }
}
