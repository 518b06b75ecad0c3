use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{Lightpath, NodeCap, NodeId, Topology};
use crate::online::OnlineRlp;
use crate::oracle::{exact_set_cover, opt_rlp_general, OracleLimits};
use crate::ratio::RatioValue;

use super::{AdversaryTrace, Session};

/// A set-cover instance encoded as location placement with `d = |S|`.
///
/// Node layout for `m = |S|` sets and `n = |X|` elements:
/// set `j` is node `j`, element `i` owns `s_i = m + 2i`, `t_i = m + 2i + 1`
/// and the private nodes `v_ij = m + 2n + i*m + j`. The path of element `i`
/// runs `s_i, u_0, ..., u_{m-1}, t_i` with `u_j` the set node when the
/// element belongs to set `j` and `v_ij` otherwise. Its only window of `d`
/// internal nodes is the whole middle, so a placement serves it exactly when
/// it hits one of those nodes.
#[derive(Debug, Clone)]
pub struct SetCoverRlp {
    pub topology: Topology,
    pub d: usize,
    pub set_count: usize,
    pub element_count: usize,
    /// One path per arriving element; path id = arrival index.
    pub paths: Vec<Lightpath>,
    /// Element index of each path.
    pub element_of_path: Vec<usize>,
    membership: Vec<Vec<usize>>,
}

pub fn build_rlp_from_setcover(element_count: usize, sets: &[Vec<usize>], arrival: &[usize]) -> Result<SetCoverRlp> {
    let m = sets.len();
    if m < 2 {
        return Err(Error::InvalidConfig(format!("construction needs at least two sets, got {m}")));
    }
    let mut membership = vec![Vec::new(); element_count];
    for (j, s) in sets.iter().enumerate() {
        for &e in s {
            if e >= element_count {
                return Err(Error::InvalidConfig(format!("set {j} names element {e} outside 0..{element_count}")));
            }
            if !membership[e].contains(&j) {
                membership[e].push(j);
            }
        }
    }
    if membership.iter().any(Vec::is_empty) {
        return Err(Error::UncoverableElement);
    }
    let mut seen = BTreeSet::new();
    for &e in arrival {
        if e >= element_count || !seen.insert(e) {
            return Err(Error::InvalidConfig(format!("arrival order repeats or misnames element {e}")));
        }
    }

    let node_path = |i: usize| -> Vec<NodeId> {
        let mut nodes = vec![m + 2 * i];
        nodes.extend((0..m).map(|j| if membership[i].contains(&j) { j } else { m + 2 * element_count + i * m + j }));
        nodes.push(m + 2 * i + 1);
        nodes
    };
    let mut edges = BTreeSet::new();
    for i in 0..element_count {
        for w in node_path(i).windows(2) {
            edges.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
    }
    let topology = Topology::general(m + 2 * element_count + element_count * m, edges)?;
    let paths: Vec<Lightpath> = arrival.iter().enumerate().map(|(id, &e)| Lightpath::new(id, node_path(e))).collect();
    Ok(SetCoverRlp {
        topology,
        d: m,
        set_count: m,
        element_count,
        paths,
        element_of_path: arrival.to_vec(),
        membership,
    })
}

impl SetCoverRlp {
    pub fn is_set_node(&self, v: NodeId) -> bool {
        v < self.set_count
    }

    /// Sets containing element `e`, ascending.
    pub fn sets_of(&self, e: usize) -> &[usize] {
        &self.membership[e]
    }

    /// Set cover from a location set serving the first `presented` paths:
    /// keep the set nodes, and for a path served only through a private
    /// node use its element's first set instead. Each replacement consumes
    /// a distinct private location, so the cover is never larger.
    pub fn normalize_to_cover(&self, locations: &BTreeSet<NodeId>, presented: usize) -> BTreeSet<usize> {
        let mut n = CoverNormalizer::default();
        n.update(self, locations, presented);
        n.cover
    }

    /// True iff `cover` contains a set of every element among the first
    /// `presented` arrivals.
    pub fn is_cover(&self, cover: &BTreeSet<usize>, presented: usize) -> bool {
        self.element_of_path[..presented].iter().all(|&e| self.membership[e].iter().any(|j| cover.contains(j)))
    }
}

/// Online form of the normalizer: the cover only grows as locations and
/// paths arrive.
#[derive(Debug, Clone, Default)]
pub struct CoverNormalizer {
    pub cover: BTreeSet<usize>,
}

impl CoverNormalizer {
    pub fn update(&mut self, inst: &SetCoverRlp, locations: &BTreeSet<NodeId>, presented: usize) -> &BTreeSet<usize> {
        self.cover.extend(locations.iter().copied().filter(|&v| inst.is_set_node(v)));
        for &e in &inst.element_of_path[..presented] {
            let sets = inst.sets_of(e);
            if !sets.iter().any(|j| self.cover.contains(j)) {
                self.cover.insert(sets[0]);
            }
        }
        &self.cover
    }
}

/// Presents the built instance to an online location algorithm, keeping the
/// normalized cover alongside. Fails if the normalized cover is ever larger
/// than the algorithm's cost or misses a presented element.
pub fn adv_setcover_fig1<A, F>(
    element_count: usize,
    sets: &[Vec<usize>],
    arrival: &[usize],
    make: F,
) -> Result<AdversaryTrace>
where
    A: OnlineRlp,
    F: FnOnce(&Topology) -> Result<A>,
{
    let inst = build_rlp_from_setcover(element_count, sets, arrival)?;
    let mut alg = make(&inst.topology)?;
    let name = alg.name();
    let mut session = Session::new(inst.topology.clone(), inst.d, NodeCap::Unbounded);
    let mut normalizer = CoverNormalizer::default();
    for (i, p) in inst.paths.iter().enumerate() {
        session.present_rlp(&mut alg, p.clone())?;
        let cover = normalizer.update(&inst, &alg.assignment().locations(), i + 1);
        if cover.len() > alg.cost() || !inst.is_cover(cover, i + 1) {
            return Err(Error::Invariant(format!(
                "normalized cover {cover:?} is invalid or exceeds cost {}",
                alg.cost()
            )));
        }
    }

    let oracle = opt_rlp_general(&inst.topology, &inst.paths, inst.d, &OracleLimits::default())?;
    let presented: Vec<Vec<usize>> = {
        let mut remap = vec![usize::MAX; element_count];
        for (i, &e) in arrival.iter().enumerate() {
            remap[e] = i;
        }
        sets.iter().map(|s| s.iter().map(|&e| remap[e]).filter(|&i| i != usize::MAX).collect()).collect()
    };
    let cover_opt = exact_set_cover(arrival.len(), &presented, OracleLimits::default().max_candidates)?;
    let verified = oracle.optimal && cover_opt.optimal;
    if verified && oracle.objective != cover_opt.chosen.len() {
        return Err(Error::Invariant(format!(
            "location optimum {} differs from set cover optimum {}",
            oracle.objective,
            cover_opt.chosen.len()
        )));
    }

    let online = alg.cost();
    let cover_size = normalizer.cover.len();
    let mut trace = session.into_trace("setcover-fig1", name, sets.len())?;
    trace.online = online;
    trace.offline = oracle.objective;
    trace.offline_verified = verified;
    trace.quantities.insert("sets".into(), sets.len());
    trace.quantities.insert("elements".into(), element_count);
    trace.quantities.insert("cover".into(), cover_size);
    Ok(trace.finish(RatioValue::of(online, oracle.objective)))
}
