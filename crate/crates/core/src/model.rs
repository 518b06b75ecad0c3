//! Network topology, lightpaths and regenerator assignments.
//!
//! Node ids are dense integers `0..node_count`. On a path topology the id is
//! the node's position along the line, so windows and regions reduce to
//! index arithmetic.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type NodeId = usize;
/// Arrival ordinal of a lightpath.
pub type PathId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TopologyKind {
    Path,
    General,
}

/// Undirected simple graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    node_count: usize,
    kind: TopologyKind,
    /// Normalized so that `u < v`.
    edges: BTreeSet<(NodeId, NodeId)>,
    adjacency: Vec<Vec<NodeId>>,
}

impl Topology {
    /// The line `0 - 1 - ... - (n-1)`.
    pub fn path(node_count: usize) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::InvalidTopology("path topology needs at least one node".into()));
        }
        let edges = (1..node_count).map(|i| (i - 1, i));
        Self::build(node_count, TopologyKind::Path, edges)
    }

    pub fn general<I>(node_count: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        if node_count == 0 {
            return Err(Error::InvalidTopology("graph needs at least one node".into()));
        }
        Self::build(node_count, TopologyKind::General, edges)
    }

    /// Cycle on `node_count >= 3` nodes, as a general topology.
    pub fn ring(node_count: usize) -> Result<Self> {
        if node_count < 3 {
            return Err(Error::InvalidTopology("ring needs at least three nodes".into()));
        }
        Self::general(node_count, (0..node_count).map(|i| (i, (i + 1) % node_count)))
    }

    fn build<I>(node_count: usize, kind: TopologyKind, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut set = BTreeSet::new();
        let mut adjacency = vec![Vec::new(); node_count];
        for (u, v) in edges {
            if u >= node_count || v >= node_count {
                return Err(Error::InvalidTopology(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidTopology(format!("self-loop at {u}")));
            }
            if !set.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidTopology(format!("duplicate edge ({u},{v})")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self { node_count, kind, edges: set, adjacency })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn kind(&self) -> TopologyKind {
        self.kind
    }

    pub fn is_path(&self) -> bool {
        self.kind == TopologyKind::Path
    }

    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v]
    }

    /// Checks that `path` is a simple path of this graph.
    pub fn check_path(&self, path: &Lightpath) -> Result<()> {
        let fail = |reason: String| Err(Error::InvalidPath { path: path.id, reason });
        if path.nodes.len() < 2 {
            return fail("a lightpath needs at least one edge".into());
        }
        let mut seen = BTreeSet::new();
        for &v in &path.nodes {
            if v >= self.node_count {
                return fail(format!("node {v} out of range"));
            }
            if !seen.insert(v) {
                return fail(format!("node {v} repeated"));
            }
        }
        for pair in path.nodes.windows(2) {
            if !self.has_edge(pair[0], pair[1]) {
                return fail(format!("({},{}) is not an edge", pair[0], pair[1]));
            }
        }
        Ok(())
    }
}

/// A routed connection, stored in arrival orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Lightpath {
    pub id: PathId,
    pub nodes: Vec<NodeId>,
}

impl Lightpath {
    pub fn new(id: PathId, nodes: Vec<NodeId>) -> Self {
        Self { id, nodes }
    }

    /// Consecutive run `from..=to` (or its reverse) on a path topology.
    pub fn between(id: PathId, from: NodeId, to: NodeId) -> Self {
        let nodes = if from <= to { (from..=to).collect() } else { (to..=from).rev().collect() };
        Self { id, nodes }
    }

    pub fn edge_count(&self) -> usize {
        self.nodes.len().saturating_sub(1)
    }

    pub fn internal(&self) -> &[NodeId] {
        if self.nodes.len() <= 2 {
            &[]
        } else {
            &self.nodes[1..self.nodes.len() - 1]
        }
    }

    pub fn is_internal(&self, v: NodeId) -> bool {
        self.internal().contains(&v)
    }

    pub fn endpoints(&self) -> (NodeId, NodeId) {
        (self.nodes[0], self.nodes[self.nodes.len() - 1])
    }

    /// Smallest and largest node id; on a path topology this is the span.
    pub fn span(&self) -> (NodeId, NodeId) {
        let (a, b) = self.endpoints();
        (a.min(b), a.max(b))
    }
}

/// Per-node regenerator limit `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NodeCap {
    Bounded(usize),
    Unbounded,
}

impl NodeCap {
    fn admits(self, count: usize) -> bool {
        match self {
            NodeCap::Bounded(k) => count <= k,
            NodeCap::Unbounded => true,
        }
    }
}

/// The set of `(node, path)` pairs with a regenerator, plus per-node counts.
///
/// Placements only ever grow; there is no removal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegeneratorAssignment {
    placements: BTreeSet<(NodeId, PathId)>,
    per_node: BTreeMap<NodeId, usize>,
    cap: NodeCap,
}

impl RegeneratorAssignment {
    pub fn new(cap: NodeCap) -> Self {
        Self { placements: BTreeSet::new(), per_node: BTreeMap::new(), cap }
    }

    pub fn unbounded() -> Self {
        Self::new(NodeCap::Unbounded)
    }

    pub fn cap(&self) -> NodeCap {
        self.cap
    }

    /// Places a regenerator for `path` at `node`. Returns `false` if it was
    /// already there.
    pub fn place(&mut self, node: NodeId, path: &Lightpath) -> Result<bool> {
        if !path.is_internal(node) {
            return Err(Error::NotInternal { node, path: path.id });
        }
        self.place_internal(node, path.id)
    }

    /// Same as [`place`](Self::place) for callers that already know `node` is
    /// internal to the path.
    pub(crate) fn place_internal(&mut self, node: NodeId, path: PathId) -> Result<bool> {
        if self.placements.contains(&(node, path)) {
            return Ok(false);
        }
        let count = self.count(node);
        if !self.cap.admits(count + 1) {
            let NodeCap::Bounded(cap) = self.cap else { unreachable!() };
            return Err(Error::CapExceeded { node, count, cap });
        }
        self.placements.insert((node, path));
        *self.per_node.entry(node).or_default() += 1;
        Ok(true)
    }

    /// `reg(v, P)`
    pub fn has(&self, node: NodeId, path: PathId) -> bool {
        self.placements.contains(&(node, path))
    }

    /// `reg(v)`
    pub fn count(&self, node: NodeId) -> usize {
        self.per_node.get(&node).copied().unwrap_or(0)
    }

    pub fn is_occupied(&self, node: NodeId) -> bool {
        self.count(node) > 0
    }

    pub fn placements(&self) -> impl Iterator<Item = (NodeId, PathId)> + '_ {
        self.placements.iter().copied()
    }

    pub fn placement_count(&self) -> usize {
        self.placements.len()
    }

    pub fn nodes_for(&self, path: PathId) -> Vec<NodeId> {
        self.placements.iter().filter(|&&(_, p)| p == path).map(|&(v, _)| v).collect()
    }

    /// `R(reg)`: nodes holding at least one regenerator.
    pub fn locations(&self) -> BTreeSet<NodeId> {
        self.per_node.keys().copied().collect()
    }

    pub fn cost(&self) -> usize {
        self.per_node.len()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.placements.is_subset(&other.placements)
    }
}

/// Assignment under the unbounded-capacity normalization: once a node is a
/// regenerator location, every registered path internal to it gets a
/// regenerator there, including paths registered later.
#[derive(Debug, Clone)]
pub struct LocationAssignment {
    assignment: RegeneratorAssignment,
    locations: BTreeSet<NodeId>,
    paths_at: BTreeMap<NodeId, Vec<PathId>>,
}

impl Default for LocationAssignment {
    fn default() -> Self {
        Self::new()
    }
}

impl LocationAssignment {
    pub fn new() -> Self {
        Self { assignment: RegeneratorAssignment::unbounded(), locations: BTreeSet::new(), paths_at: BTreeMap::new() }
    }

    /// Records `path` and gives it a regenerator at every existing location
    /// among its internal nodes.
    pub fn register(&mut self, path: &Lightpath) {
        for &v in path.internal() {
            self.paths_at.entry(v).or_default().push(path.id);
            if self.locations.contains(&v) {
                self.assignment.place_internal(v, path.id).expect("unbounded assignment never hits a cap");
            }
        }
    }

    /// Opens a location at `v`. Returns `false` if it was already open.
    pub fn locate(&mut self, v: NodeId) -> bool {
        if !self.locations.insert(v) {
            return false;
        }
        for &p in self.paths_at.get(&v).into_iter().flatten() {
            self.assignment.place_internal(v, p).expect("unbounded assignment never hits a cap");
        }
        true
    }

    pub fn is_located(&self, v: NodeId) -> bool {
        self.locations.contains(&v)
    }

    pub fn locations(&self) -> &BTreeSet<NodeId> {
        &self.locations
    }

    pub fn assignment(&self) -> &RegeneratorAssignment {
        &self.assignment
    }

    pub fn cost(&self) -> usize {
        self.assignment.cost()
    }
}

/// True iff every window of `d` consecutive internal vertices of `path`
/// contains a node accepted by `hit`.
pub fn windows_hit(path: &Lightpath, d: usize, hit: impl Fn(NodeId) -> bool) -> bool {
    if d == 0 || path.edge_count() <= d {
        return true;
    }
    path.internal().windows(d).all(|w| w.iter().any(|&v| hit(v)))
}

/// d-satisfaction of `path` under `assignment`; only regenerators assigned
/// to this path count.
pub fn is_d_satisfied(path: &Lightpath, assignment: &RegeneratorAssignment, d: usize) -> bool {
    windows_hit(path, d, |v| assignment.has(v, path.id))
}

/// d-satisfaction when every node in `nodes` serves every path through it.
pub fn is_d_satisfied_by_nodes(path: &Lightpath, nodes: &BTreeSet<NodeId>, d: usize) -> bool {
    windows_hit(path, d, |v| nodes.contains(&v))
}

pub fn cost(assignment: &RegeneratorAssignment) -> usize {
    assignment.cost()
}

/// Maximal run of consecutive node ids inside the union of internal vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub start: NodeId,
    pub end: NodeId,
}

impl Region {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: NodeId) -> bool {
        (self.start..=self.end).contains(&v)
    }

    pub fn nodes(&self) -> RangeInclusive<NodeId> {
        self.start..=self.end
    }

    pub fn count_in<'a>(&self, nodes: impl IntoIterator<Item = &'a NodeId>) -> usize {
        nodes.into_iter().filter(|&&v| self.contains(v)).count()
    }
}

pub fn regions(paths: &[Lightpath], topology: &Topology) -> Result<Vec<Region>> {
    if !topology.is_path() {
        return Err(Error::NotPathTopology);
    }
    let union: BTreeSet<NodeId> = paths.iter().flat_map(|p| p.internal().iter().copied()).collect();
    let mut out: Vec<Region> = Vec::new();
    for v in union {
        match out.last_mut() {
            Some(r) if r.end + 1 == v => r.end = v,
            _ => out.push(Region { start: v, end: v }),
        }
    }
    Ok(out)
}

/// `|L| <= opt_L * (2d - 1)`, which holds for every feasible assignment.
pub fn region_opt_bound_holds(region: &Region, opt_count_in_region: usize, d: usize) -> bool {
    region.len() <= opt_count_in_region * (2 * d).saturating_sub(1)
}
