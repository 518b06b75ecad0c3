//! Exhaustive reference solvers, written independently of the library's
//! oracles and only usable on tiny instances.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use regen_core::{Lightpath, NodeId};

/// Every window of `d` consecutive internal nodes contains a chosen node.
pub fn satisfied(path: &Lightpath, chosen: &BTreeSet<NodeId>, d: usize) -> bool {
    let internal = &path.nodes[1..path.nodes.len() - 1];
    if path.nodes.len() - 1 <= d {
        return true;
    }
    (0..=internal.len() - d).all(|s| internal[s..s + d].iter().any(|v| chosen.contains(v)))
}

/// Fewest locations serving all paths, by increasing subset size over the
/// union of internal nodes.
pub fn brute_rlp(paths: &[Lightpath], d: usize) -> usize {
    let candidates: Vec<NodeId> = paths
        .iter()
        .flat_map(|p| p.nodes[1..p.nodes.len() - 1].iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    assert!(candidates.len() <= 20, "brute force is exponential");
    let mut best = candidates.len();
    for mask in 0u32..(1 << candidates.len()) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let chosen: BTreeSet<NodeId> =
            (0..candidates.len()).filter(|i| mask >> i & 1 == 1).map(|i| candidates[i]).collect();
        if paths.iter().all(|p| satisfied(p, &chosen, d)) {
            best = size;
        }
    }
    best
}

/// Smallest number of sets covering `0..universe`.
pub fn brute_set_cover(universe: usize, sets: &[Vec<usize>]) -> Option<usize> {
    assert!(sets.len() <= 20);
    let mut best: Option<usize> = None;
    for mask in 0u32..(1 << sets.len()) {
        let size = mask.count_ones() as usize;
        if best.is_some_and(|b| size >= b) {
            continue;
        }
        let mut covered = vec![false; universe];
        for (j, s) in sets.iter().enumerate() {
            if mask >> j & 1 == 1 {
                for &e in s {
                    covered[e] = true;
                }
            }
        }
        if covered.iter().all(|&c| c) {
            best = Some(size);
        }
    }
    best
}

/// Can all `paths` be 2-satisfied with at most one regenerator per node?
/// Tries every owner for every internal node, pruning an edge as soon as
/// both of its ends are decided.
pub fn brute_pmax_feasible(paths: &[&Lightpath]) -> bool {
    // Each path needs each of its trimmed edges to have an endpoint it owns.
    let nodes: Vec<NodeId> = paths
        .iter()
        .flat_map(|p| p.nodes[1..p.nodes.len() - 1].iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut owner: BTreeMap<NodeId, Option<usize>> = BTreeMap::new();
    assign(paths, &nodes, 0, &mut owner)
}

fn assign(paths: &[&Lightpath], nodes: &[NodeId], i: usize, owner: &mut BTreeMap<NodeId, Option<usize>>) -> bool {
    let ok = paths.iter().enumerate().all(|(pi, p)| {
        let internal = &p.nodes[1..p.nodes.len() - 1];
        internal.windows(2).all(|w| match (owner.get(&w[0]), owner.get(&w[1])) {
            (Some(a), Some(b)) => *a == Some(pi) || *b == Some(pi),
            _ => true,
        })
    });
    if !ok {
        return false;
    }
    if i == nodes.len() {
        return true;
    }
    let v = nodes[i];
    let mut options = vec![None];
    options.extend(
        paths.iter().enumerate().filter(|(_, p)| p.nodes[1..p.nodes.len() - 1].contains(&v)).map(|(pi, _)| Some(pi)),
    );
    for o in options {
        owner.insert(v, o);
        if assign(paths, nodes, i + 1, owner) {
            return true;
        }
    }
    owner.remove(&v);
    false
}

/// Largest feasible subset, by checking every subset.
pub fn brute_pmax(paths: &[Lightpath]) -> usize {
    assert!(paths.len() <= 12);
    let mut best = 0;
    for mask in 0u32..(1 << paths.len()) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let subset: Vec<&Lightpath> = (0..paths.len()).filter(|i| mask >> i & 1 == 1).map(|i| &paths[i]).collect();
        if brute_pmax_feasible(&subset) {
            best = size;
        }
    }
    best
}
