//! Location problem on an arbitrary topology, solved online through set
//! cover: elements are windows of `d` consecutive internal vertices, and
//! there is one set per node holding every window through that node.
//! A lightpath is d-satisfied exactly when all its windows are covered, so
//! the cover is the set of regenerator locations.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Lightpath, LocationAssignment, NodeId, RegeneratorAssignment, Topology};
use crate::online::OnlineRlp;
use crate::set_cover::SetCoverState;

/// Default number of enumerated paths before [`count_length_d_paths`] gives
/// up and reports its cap as an upper bound.
pub const DEFAULT_DFS_CAP: u64 = 1_000_000;

/// A subpath up to orientation; stored as the lexicographically smaller of
/// the sequence and its reversal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PathElement(Vec<NodeId>);

impl PathElement {
    pub fn canonical(nodes: &[NodeId]) -> Self {
        let forward = nodes.to_vec();
        let mut backward = forward.clone();
        backward.reverse();
        PathElement(forward.min(backward))
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.0
    }
}

fn windows_dedup(nodes: &[NodeId], size: usize) -> Vec<PathElement> {
    if size == 0 || nodes.len() < size {
        return Vec::new();
    }
    let mut seen = BTreeSet::new();
    nodes.windows(size).map(PathElement::canonical).filter(|e| seen.insert(e.clone())).collect()
}

/// All subpaths of `path` with exactly `d` edges, left to right, canonical
/// and without repeats. Empty when the path is shorter than `d`.
pub fn subpaths_of_length_d(path: &Lightpath, d: usize) -> Vec<PathElement> {
    windows_dedup(&path.nodes, d + 1)
}

/// The elements presented for `path`: every run of `d` consecutive internal
/// vertices. Paths with at most `d` edges have none.
pub fn internal_windows(path: &Lightpath, d: usize) -> Vec<PathElement> {
    if path.edge_count() <= d {
        return Vec::new();
    }
    windows_dedup(path.internal(), d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathCount {
    pub count: u64,
    /// True when enumeration hit the cap and `count` is only an upper bound.
    pub estimated: bool,
}

/// Number of simple paths with exactly `d` edges, counted once per
/// orientation pair.
pub fn count_length_d_paths(topology: &Topology, d: usize, cap: u64) -> PathCount {
    let n = topology.node_count() as u64;
    if d == 0 {
        return PathCount { count: n, estimated: false };
    }
    if topology.is_path() {
        return PathCount { count: n.saturating_sub(d as u64), estimated: false };
    }
    let limit = cap.saturating_mul(2);
    let mut directed = 0u64;
    let mut on_path = vec![false; topology.node_count()];
    for start in 0..topology.node_count() {
        on_path[start] = true;
        let done = count_from(topology, start, d, &mut on_path, &mut directed, limit);
        on_path[start] = false;
        if !done {
            return PathCount { count: cap, estimated: true };
        }
    }
    PathCount { count: directed / 2, estimated: false }
}

/// Returns false once `directed` exceeds `limit`.
fn count_from(
    topology: &Topology,
    at: NodeId,
    remaining: usize,
    on_path: &mut [bool],
    directed: &mut u64,
    limit: u64,
) -> bool {
    if remaining == 0 {
        *directed += 1;
        return *directed <= limit;
    }
    for &next in topology.neighbors(at) {
        if on_path[next] {
            continue;
        }
        on_path[next] = true;
        let ok = count_from(topology, next, remaining - 1, on_path, directed, limit);
        on_path[next] = false;
        if !ok {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone)]
pub struct ReductionState {
    topology: Topology,
    d: usize,
    osc: SetCoverState,
    placement: LocationAssignment,
}

impl ReductionState {
    /// Uses the number of possible elements (simple paths on `d` nodes) as
    /// the universe size bound.
    pub fn new(topology: &Topology, d: usize, seed: u64) -> Result<Self> {
        let universe = count_length_d_paths(topology, d.saturating_sub(1), DEFAULT_DFS_CAP).count;
        Self::with_universe_bound(topology, d, universe.max(2), seed)
    }

    pub fn with_universe_bound(topology: &Topology, d: usize, universe_bound: u64, seed: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidConfig(format!("reduction needs d >= 2, got {d}")));
        }
        let osc = SetCoverState::new(0..topology.node_count(), d + 1, universe_bound, seed)?;
        Ok(Self { topology: topology.clone(), d, osc, placement: LocationAssignment::new() })
    }

    pub fn set_cover(&self) -> &SetCoverState {
        &self.osc
    }

    pub fn placement(&self) -> &LocationAssignment {
        &self.placement
    }

    /// Presents every internal window of `path` to the set-cover state and
    /// opens a location for every set it adds. Returns the opened nodes in
    /// the order they were opened.
    pub fn rlp_general_present(&mut self, path: &Lightpath) -> Result<Vec<NodeId>> {
        self.topology.check_path(path)?;
        self.placement.register(path);
        let mut opened = Vec::new();
        for element in internal_windows(path, self.d) {
            for v in self.osc.present(element.nodes())? {
                if self.placement.locate(v) {
                    opened.push(v);
                }
            }
        }
        Ok(opened)
    }
}

impl OnlineRlp for ReductionState {
    fn name(&self) -> String {
        "set-cover".into()
    }

    fn d(&self) -> usize {
        self.d
    }

    fn present(&mut self, path: &Lightpath) -> Result<Vec<NodeId>> {
        self.rlp_general_present(path)
    }

    fn assignment(&self) -> &RegeneratorAssignment {
        self.placement.assignment()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::is_d_satisfied;

    fn elems(list: &[&[NodeId]]) -> Vec<PathElement> {
        list.iter().map(|n| PathElement::canonical(n)).collect()
    }

    #[test]
    fn subpath_windows() {
        let p = Lightpath::new(0, vec![0, 1, 2, 3]);
        assert_eq!(subpaths_of_length_d(&p, 2), elems(&[&[0, 1, 2], &[1, 2, 3]]));
        assert_eq!(subpaths_of_length_d(&p, 3), elems(&[&[0, 1, 2, 3]]));
        assert!(subpaths_of_length_d(&p, 4).is_empty());
    }

    #[test]
    fn reversal_gives_same_elements() {
        let p = Lightpath::new(0, vec![0, 1, 2, 3]);
        let q = Lightpath::new(1, vec![3, 2, 1, 0]);
        let a: BTreeSet<_> = subpaths_of_length_d(&p, 2).into_iter().collect();
        let b: BTreeSet<_> = subpaths_of_length_d(&q, 2).into_iter().collect();
        assert_eq!(a, b);
        assert_eq!(PathElement::canonical(&[3, 2, 1]).nodes(), &[1, 2, 3]);
    }

    #[test]
    fn internal_window_elements() {
        let p = Lightpath::new(0, vec![0, 1, 2, 3, 4]);
        assert_eq!(internal_windows(&p, 2), elems(&[&[1, 2], &[2, 3]]));
        assert_eq!(internal_windows(&p, 3), elems(&[&[1, 2, 3]]));
        assert!(internal_windows(&p, 4).is_empty());
    }

    #[test]
    fn path_counts() {
        let line = Topology::path(6).unwrap();
        assert_eq!(count_length_d_paths(&line, 2, DEFAULT_DFS_CAP), PathCount { count: 4, estimated: false });
        let triangle = Topology::ring(3).unwrap();
        assert_eq!(count_length_d_paths(&triangle, 2, DEFAULT_DFS_CAP).count, 3);
        let star = Topology::general(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(count_length_d_paths(&star, 2, DEFAULT_DFS_CAP).count, 3);
        assert_eq!(count_length_d_paths(&star, 1, DEFAULT_DFS_CAP).count, 3);
        assert_eq!(count_length_d_paths(&star, 3, DEFAULT_DFS_CAP).count, 0);
    }

    #[test]
    fn path_count_cap() {
        // K5 has 5*4*3/2 = 30 paths with two edges.
        let k5 = Topology::general(5, (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v)))).unwrap();
        assert_eq!(count_length_d_paths(&k5, 2, 100).count, 30);
        assert_eq!(count_length_d_paths(&k5, 2, 10), PathCount { count: 10, estimated: true });
    }

    #[test]
    fn ring_path_is_satisfied() {
        let ring = Topology::ring(6).unwrap();
        for seed in 0..20 {
            let mut st = ReductionState::new(&ring, 2, seed).unwrap();
            let p = Lightpath::new(0, vec![0, 1, 2, 3]);
            let opened = st.rlp_general_present(&p).unwrap();
            assert!(!opened.is_empty());
            assert!(opened.iter().all(|v| p.is_internal(*v)));
            assert!(is_d_satisfied(&p, st.assignment(), 2));
            assert_eq!(st.cost(), st.set_cover().cover().len());
            let again = Lightpath::new(1, vec![3, 2, 1, 0]);
            assert!(st.rlp_general_present(&again).unwrap().is_empty());
            assert!(is_d_satisfied(&again, st.assignment(), 2));
        }
    }

    #[test]
    fn star_placements_stay_on_the_path() {
        // Center 0 with legs 0-1-2-3, 0-4-5-6, 0-7-8-9.
        let edges = [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (0, 7), (7, 8), (8, 9)];
        let star = Topology::general(10, edges).unwrap();
        let p = Lightpath::new(0, vec![3, 2, 1, 0, 4, 5, 6]);
        for seed in 0..20 {
            let mut st = ReductionState::new(&star, 2, seed).unwrap();
            let opened = st.rlp_general_present(&p).unwrap();
            assert!(opened.iter().all(|v| p.is_internal(*v)));
            assert!(is_d_satisfied(&p, st.assignment(), 2));
        }
    }

    #[test]
    fn rejects_small_d() {
        let ring = Topology::ring(6).unwrap();
        assert!(ReductionState::new(&ring, 1, 0).is_err());
    }
}
