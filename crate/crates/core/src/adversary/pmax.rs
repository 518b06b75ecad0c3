use crate::error::{Error, Result};
use crate::model::{Lightpath, NodeCap, NodeId, Topology};
use crate::online::OnlinePmax;
use crate::oracle::{is_feasible_pmax, opt_pmax, OracleLimits};
use crate::ratio::RatioValue;

use super::{AdversaryTrace, Session};

/// Infeasible-instance adversary with `l` internal nodes on the first path.
///
/// After the long path, `r = sqrt(l)` medium paths tile its internal nodes
/// in disjoint blocks of `r`. For every medium the algorithm satisfies, the
/// block is tiled again by `r / 2` short paths with two internal nodes each;
/// a short shares its trimmed edge with both the long path and the medium,
/// so at most two of the three can be served.
pub fn adv_pmax_infeasible<A, F>(l: usize, make: F) -> Result<AdversaryTrace>
where
    A: OnlinePmax,
    F: FnOnce(&Topology) -> Result<A>,
{
    let r = l.isqrt();
    if l < 4 || r * r != l {
        return Err(Error::InvalidConfig(format!("l must be a perfect square >= 4, got {l}")));
    }
    let topology = Topology::path(l + 2)?;
    let mut alg = make(&topology)?;
    let name = alg.name();
    let mut session = Session::new(topology, 2, NodeCap::Bounded(1));

    let long = session.next_path(0, l + 1);
    if !session.present_pmax(&mut alg, long)? {
        let mut trace = session.into_trace("pmax-infeasible", name, l)?;
        trace.offline = 1;
        trace.offline_verified = true;
        trace.note = Some("first path rejected".into());
        trace.quantities.insert("l".into(), l);
        return Ok(trace.finish(RatioValue::Infinite));
    }

    let mut satisfied_mediums = Vec::new();
    for m in 0..r {
        let medium = session.next_path(m * r, (m + 1) * r + 1);
        if session.present_pmax(&mut alg, medium)? {
            satisfied_mediums.push(m);
        }
    }
    let x = satisfied_mediums.len();
    for &m in &satisfied_mediums {
        for p in 0..r / 2 {
            let u = m * r + 1 + 2 * p;
            let short = session.next_path(u - 1, u + 2);
            session.present_pmax(&mut alg, short)?;
        }
    }

    // With x = 0 the long path fits next to all mediums; otherwise the
    // mediums and shorts beat anything that keeps the long path.
    let (offline, witness): (usize, Vec<Lightpath>) =
        if x == 0 { (r + 1, session.requests.clone()) } else { (r + x * (r / 2), session.requests[1..].to_vec()) };
    if !is_feasible_pmax(&witness) {
        return Err(Error::Invariant("offline witness is infeasible".into()));
    }
    let limits = OracleLimits::default();
    if session.requests.len() <= limits.max_pmax_paths {
        let opt = opt_pmax(&session.requests, &limits)?.objective;
        if opt != offline {
            return Err(Error::Invariant(format!("closed form {offline} disagrees with optimum {opt}")));
        }
    }

    let online = session.satisfied_count();
    let mut trace = session.into_trace("pmax-infeasible", name, l)?;
    trace.online = online;
    trace.offline = offline;
    trace.offline_verified = true;
    trace.quantities.insert("l".into(), l);
    trace.quantities.insert("x".into(), x);
    if x == 0 {
        trace.note = Some("algorithm rejected every medium path".into());
    }
    Ok(trace.finish(RatioValue::of(offline, online)))
}

const BLOCK: usize = 13;

/// Feasible-instance adversary over `n` subpaths of the first path.
///
/// The first path has `13n` edges. Its trimmed part is cut into `n` blocks of
/// 11 edges with two edges between blocks. In each block the adversary
/// reads how the algorithm placed the first path's regenerators:
///
/// * two disjoint edges with both ends occupied: it releases the two short
///   paths trimmed to those edges, which the algorithm can no longer serve,
///   and stops;
/// * otherwise, at the leftmost nodes `v1..v5` occupied as `1,0,1,0,1`, it
///   releases the path trimmed to `v2..v4` and, if that is accepted, the two
///   paths trimmed to `v1 v2` and `v4 v5`.
///
/// A placement matching neither case is reported as an error.
pub fn adv_pmax_feasible<A, F>(n: usize, make: F) -> Result<AdversaryTrace>
where
    A: OnlinePmax,
    F: FnOnce(&Topology) -> Result<A>,
{
    if n == 0 {
        return Err(Error::InvalidConfig("n must be positive".into()));
    }
    let last = BLOCK * n;
    let topology = Topology::path(last + 1)?;
    let mut alg = make(&topology)?;
    let name = alg.name();
    let mut session = Session::new(topology, 2, NodeCap::Bounded(1));

    let p0 = session.next_path(0, last);
    let p0_id = p0.id;
    if !session.present_pmax(&mut alg, p0)? {
        let mut trace = session.into_trace("pmax-feasible", name, n)?;
        trace.offline = 1;
        trace.offline_verified = true;
        trace.note = Some("first path rejected".into());
        trace.quantities.insert("n".into(), n);
        return Ok(trace.finish(RatioValue::Infinite));
    }

    let mut h = 0;
    let mut stopped = None;
    for i in 0..n {
        let start = 1 + BLOCK * i;
        let block: Vec<NodeId> = (start..=start + 11).collect();
        let occupied = |v: NodeId| alg.assignment().has(v, p0_id);

        let full_edges: Vec<NodeId> =
            block.windows(2).filter(|w| occupied(w[0]) && occupied(w[1])).map(|w| w[0]).collect();
        let disjoint = full_edges.iter().find_map(|&a| full_edges.iter().find(|&&c| c >= a + 2).map(|&c| (a, c)));
        if let Some((a, c)) = disjoint {
            let first = session.next_path(a - 1, a + 2);
            session.present_pmax(&mut alg, first)?;
            let second = session.next_path(c - 1, c + 2);
            session.present_pmax(&mut alg, second)?;
            stopped = Some(i);
            break;
        }

        let pattern = [true, false, true, false, true];
        let v1 = block
            .windows(5)
            .find(|w| w.iter().zip(pattern).all(|(&v, want)| occupied(v) == want))
            .map(|w| w[0])
            .ok_or_else(|| {
            Error::UnmatchedCase(format!("block {i} has neither two disjoint occupied edges nor a 1,0,1,0,1 window"))
        })?;
        let middle = session.next_path(v1, v1 + 4);
        if session.present_pmax(&mut alg, middle)? {
            let left = session.next_path(v1 - 1, v1 + 2);
            session.present_pmax(&mut alg, left)?;
            let right = session.next_path(v1 + 2, v1 + 5);
            session.present_pmax(&mut alg, right)?;
            h += 1;
        }
    }

    let total = session.requests.len();
    let offline = if is_feasible_pmax(&session.requests) {
        total
    } else {
        let limits = OracleLimits::default();
        if total > limits.max_pmax_paths {
            return Err(Error::Invariant("emitted instance is infeasible and too large for the exact oracle".into()));
        }
        opt_pmax(&session.requests, &limits)?.objective
    };
    let online = session.satisfied_count();
    let mut trace = session.into_trace("pmax-feasible", name, n)?;
    trace.online = online;
    trace.offline = offline;
    trace.offline_verified = true;
    trace.quantities.insert("n".into(), n);
    trace.quantities.insert("h".into(), h);
    if let Some(i) = stopped {
        trace.note = Some(format!("block {i} had two disjoint occupied edges"));
    }
    Ok(trace.finish(RatioValue::of(offline, online)))
}
