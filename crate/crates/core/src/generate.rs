//! Seeded random instance families.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::Result;
use crate::instance::Instance;
use crate::model::{Lightpath, NodeCap, NodeId, Topology};
use crate::oracle::is_feasible_pmax;

/// Location instance on a line of at most `max_nodes` nodes. Every path has
/// at least `d + 1` edges; shorter draws are resampled.
pub fn random_path_rlp<R: Rng>(rng: &mut R, max_nodes: usize, d: usize, max_paths: usize) -> Result<Instance> {
    let min_nodes = d + 2;
    let n = rng.gen_range(min_nodes..=max_nodes.max(min_nodes));
    let count = rng.gen_range(1..=max_paths.max(1));
    let mut paths = Vec::with_capacity(count);
    while paths.len() < count {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a.abs_diff(b) < d + 1 {
            continue;
        }
        paths.push(line(a, b));
    }
    Instance::new(Topology::path(n)?, d, NodeCap::Unbounded, paths)
}

fn line(a: NodeId, b: NodeId) -> Vec<NodeId> {
    if a <= b {
        (a..=b).collect()
    } else {
        (b..=a).rev().collect()
    }
}

/// Location instance on a ring of `4..=max_nodes` nodes; paths go either
/// way around and have at least two edges.
pub fn random_ring_rlp<R: Rng>(rng: &mut R, max_nodes: usize, d: usize, max_paths: usize) -> Result<Instance> {
    let n = rng.gen_range(4..=max_nodes.max(4));
    let count = rng.gen_range(1..=max_paths.max(1));
    let paths = (0..count)
        .map(|_| {
            let start = rng.gen_range(0..n);
            let len = rng.gen_range(2..n);
            let forward = rng.gen_bool(0.5);
            (0..=len).map(|i| if forward { (start + i) % n } else { (start + n - i) % n }).collect()
        })
        .collect();
    Instance::new(Topology::ring(n)?, d, NodeCap::Unbounded, paths)
}

/// Location instance on a random tree (each node attaches to an earlier
/// one); paths are the unique routes between random node pairs at least two
/// edges apart.
pub fn random_tree_rlp<R: Rng>(rng: &mut R, max_nodes: usize, d: usize, max_paths: usize) -> Result<Instance> {
    let n = rng.gen_range(4..=max_nodes.max(4));
    let parent: Vec<NodeId> = (0..n).map(|v| if v == 0 { 0 } else { rng.gen_range(0..v) }).collect();
    let topology = Topology::general(n, (1..n).map(|v| (parent[v], v)))?;
    let count = rng.gen_range(1..=max_paths.max(1));
    let mut paths = Vec::with_capacity(count);
    let mut attempts = 0;
    while paths.len() < count && attempts < 100 * count {
        attempts += 1;
        let route = tree_route(&parent, rng.gen_range(0..n), rng.gen_range(0..n));
        if route.len() >= 3 {
            paths.push(route);
        }
    }
    if paths.is_empty() {
        // A grandchild of the root, or else a star around it.
        paths.push(match (1..n).find(|&w| parent[w] != 0) {
            Some(w) => vec![w, parent[w], parent[parent[w]]],
            None => vec![1, 0, 2],
        });
    }
    Instance::new(topology, d, NodeCap::Unbounded, paths)
}

fn tree_route(parent: &[NodeId], a: NodeId, b: NodeId) -> Vec<NodeId> {
    let ancestors = |mut v: NodeId| {
        let mut out = vec![v];
        while v != 0 {
            v = parent[v];
            out.push(v);
        }
        out
    };
    let up_a = ancestors(a);
    let up_b = ancestors(b);
    let on_b: BTreeSet<NodeId> = up_b.iter().copied().collect();
    let meet = *up_a.iter().find(|v| on_b.contains(v)).expect("root is common");
    let mut route: Vec<NodeId> = up_a.iter().copied().take_while(|&v| v != meet).collect();
    route.push(meet);
    let tail: Vec<NodeId> = up_b.iter().copied().take_while(|&v| v != meet).collect();
    route.extend(tail.into_iter().rev());
    route
}

/// Path-maximization instance (`d = 2`, `k = 1`) on a line whose paths can
/// all be satisfied together. Spans are drawn near earlier ones to force
/// overlap, and a path is kept only if the set stays feasible; arrival
/// order is shuffled afterwards.
pub fn random_pmax_feasible<R: Rng>(rng: &mut R, max_nodes: usize, max_paths: usize) -> Result<Instance> {
    let n = rng.gen_range(6..=max_nodes.max(6));
    let target = rng.gen_range(1..=max_paths.max(1));
    let mut kept: Vec<(NodeId, NodeId)> = Vec::new();
    let mut attempts = 0;
    while kept.len() < target && attempts < 20 * target {
        attempts += 1;
        let span = overlapping_span(rng, n, &kept);
        let mut trial: Vec<Lightpath> =
            kept.iter().enumerate().map(|(i, &(a, b))| Lightpath::between(i, a, b)).collect();
        trial.push(Lightpath::between(kept.len(), span.0, span.1));
        if is_feasible_pmax(&trial) {
            kept.push(span);
        }
    }
    kept.shuffle(rng);
    let paths = kept.into_iter().map(|(a, b)| if rng.gen_bool(0.5) { line(a, b) } else { line(b, a) }).collect();
    Instance::new(Topology::path(n)?, 2, NodeCap::Bounded(1), paths)
}

/// Path-maximization instance with no feasibility filter.
pub fn random_pmax<R: Rng>(rng: &mut R, max_nodes: usize, max_paths: usize) -> Result<Instance> {
    let n = rng.gen_range(6..=max_nodes.max(6));
    let count = rng.gen_range(1..=max_paths.max(1));
    let mut spans = Vec::with_capacity(count);
    for _ in 0..count {
        let s = overlapping_span(rng, n, &spans);
        spans.push(s);
    }
    let paths = spans.into_iter().map(|(a, b)| line(a, b)).collect();
    Instance::new(Topology::path(n)?, 2, NodeCap::Bounded(1), paths)
}

/// A span of at least one edge, anchored near an earlier span half the time.
fn overlapping_span<R: Rng>(rng: &mut R, n: usize, earlier: &[(NodeId, NodeId)]) -> (NodeId, NodeId) {
    let len = rng.gen_range(1..=(n - 1).min(8));
    let start = match earlier.choose(rng) {
        Some(&(a, b)) if rng.gen_bool(0.5) => {
            let lo = a.saturating_sub(2).min(n - 1 - len);
            rng.gen_range(lo..=b.min(n - 1 - len).max(lo))
        }
        _ => rng.gen_range(0..n - len),
    };
    (start, start + len)
}

/// Random set system over `1..=max_elements` elements and `2..=max_sets`
/// sets. Each element joins `1..=max_frequency` distinct sets, so every
/// element is coverable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    pub element_count: usize,
    pub sets: Vec<Vec<usize>>,
}

impl SetSystem {
    /// Sets containing each element.
    pub fn membership(&self) -> Vec<Vec<usize>> {
        let mut m = vec![Vec::new(); self.element_count];
        for (j, s) in self.sets.iter().enumerate() {
            for &e in s {
                m[e].push(j);
            }
        }
        m
    }

    pub fn max_frequency(&self) -> usize {
        self.membership().iter().map(Vec::len).max().unwrap_or(0)
    }
}

pub fn random_set_system<R: Rng>(rng: &mut R, max_elements: usize, max_sets: usize, max_frequency: usize) -> SetSystem {
    let element_count = rng.gen_range(1..=max_elements.max(1));
    let set_count = rng.gen_range(2..=max_sets.max(2));
    let mut sets = vec![Vec::new(); set_count];
    let ids: Vec<usize> = (0..set_count).collect();
    for e in 0..element_count {
        let f = rng.gen_range(1..=max_frequency.clamp(1, set_count));
        for &j in ids.choose_multiple(rng, f) {
            sets[j].push(e);
        }
    }
    SetSystem { element_count, sets }
}
