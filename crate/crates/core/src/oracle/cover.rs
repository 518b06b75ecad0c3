use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::model::{Lightpath, NodeId, Topology};
use crate::reduction::{internal_windows, PathElement};

use super::{OracleLimits, OracleMethod, OracleResult, Witness};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverSolution {
    /// Indices into the input set list, ascending.
    pub chosen: Vec<usize>,
    pub optimal: bool,
}

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn or_assign(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    fn count_new(&self, covered: &Bits) -> u32 {
        self.0.iter().zip(&covered.0).map(|(a, c)| (a & !c).count_ones()).sum()
    }

    fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

/// Greedy cover: repeatedly take the set covering most uncovered elements,
/// smallest index on ties.
pub fn greedy_set_cover(universe: usize, sets: &[Vec<usize>]) -> Result<CoverSolution> {
    let masks = masks(universe, sets)?;
    let chosen = greedy_masks(universe, &masks, &(0..sets.len()).collect::<Vec<_>>());
    Ok(CoverSolution { chosen, optimal: false })
}

fn masks(universe: usize, sets: &[Vec<usize>]) -> Result<Vec<Bits>> {
    let mut all = Bits::new(universe);
    let mut out = Vec::with_capacity(sets.len());
    for s in sets {
        let mut b = Bits::new(universe);
        for &e in s {
            if e >= universe {
                return Err(Error::InvalidConfig(format!("element {e} outside universe of size {universe}")));
            }
            b.set(e);
        }
        all.or_assign(&b);
        out.push(b);
    }
    if (0..universe).any(|e| !all.get(e)) {
        return Err(Error::UncoverableElement);
    }
    Ok(out)
}

fn greedy_masks(universe: usize, masks: &[Bits], candidates: &[usize]) -> Vec<usize> {
    let mut covered = Bits::new(universe);
    let mut chosen = Vec::new();
    loop {
        let best = candidates
            .iter()
            .map(|&s| (masks[s].count_new(&covered), s))
            .filter(|&(gain, _)| gain > 0)
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
        match best {
            Some((_, s)) => {
                covered.or_assign(&masks[s]);
                chosen.push(s);
            }
            None => break,
        }
    }
    chosen.sort_unstable();
    chosen
}

/// Minimum set cover by branch and bound. Sets contained in another set are
/// dropped first; if more than `max_candidates` remain, the greedy cover is
/// returned with `optimal = false`.
pub fn exact_set_cover(universe: usize, sets: &[Vec<usize>], max_candidates: usize) -> Result<CoverSolution> {
    let masks = masks(universe, sets)?;
    if universe == 0 {
        return Ok(CoverSolution { chosen: Vec::new(), optimal: true });
    }

    // Dominance: drop a set contained in another (among equal sets keep the
    // smallest index).
    let candidates: Vec<usize> = (0..sets.len())
        .filter(|&i| masks[i].count_new(&Bits::new(universe)) > 0)
        .filter(|&i| {
            !(0..sets.len())
                .any(|j| j != i && masks[i].is_subset(&masks[j]) && (!masks[j].is_subset(&masks[i]) || j < i))
        })
        .collect();

    let greedy = greedy_masks(universe, &masks, &candidates);
    if candidates.len() > max_candidates {
        return Ok(CoverSolution { chosen: greedy, optimal: false });
    }

    let covering: Vec<Vec<usize>> =
        (0..universe).map(|e| candidates.iter().copied().filter(|&s| masks[s].get(e)).collect()).collect();
    let mut search = Search {
        universe,
        masks: &masks,
        covering: &covering,
        excluded: vec![false; sets.len()],
        chosen: Vec::new(),
        best: greedy,
    };
    search.run(&Bits::new(universe));
    let mut chosen = search.best;
    chosen.sort_unstable();
    Ok(CoverSolution { chosen, optimal: true })
}

struct Search<'a> {
    universe: usize,
    masks: &'a [Bits],
    covering: &'a [Vec<usize>],
    excluded: Vec<bool>,
    chosen: Vec<usize>,
    best: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, covered: &Bits) {
        let uncovered: Vec<usize> = (0..self.universe).filter(|&e| !covered.get(e)).collect();
        if uncovered.is_empty() {
            if self.chosen.len() < self.best.len() {
                self.best = self.chosen.clone();
            }
            return;
        }
        if self.chosen.len() + self.lower_bound(&uncovered, covered) >= self.best.len() {
            return;
        }

        // Branch on the uncovered element with the fewest usable sets.
        let mut pick: Option<(usize, Vec<usize>)> = None;
        for &e in &uncovered {
            let options: Vec<usize> = self.covering[e].iter().copied().filter(|&s| !self.excluded[s]).collect();
            if options.is_empty() {
                return;
            }
            if pick.as_ref().is_none_or(|(_, o)| options.len() < o.len()) {
                let forced = options.len() == 1;
                pick = Some((e, options));
                if forced {
                    break;
                }
            }
        }
        let (_, mut options) = pick.expect("uncovered is non-empty");
        options
            .sort_by(|&a, &b| self.masks[b].count_new(covered).cmp(&self.masks[a].count_new(covered)).then(a.cmp(&b)));

        for &s in &options {
            let mut next = covered.clone();
            next.or_assign(&self.masks[s]);
            self.chosen.push(s);
            self.run(&next);
            self.chosen.pop();
            self.excluded[s] = true;
        }
        for &s in &options {
            self.excluded[s] = false;
        }
    }

    /// Max of a disjoint-element packing and uncovered / best gain.
    fn lower_bound(&self, uncovered: &[usize], covered: &Bits) -> usize {
        let mut used = BTreeSet::new();
        let mut packing = 0;
        for &e in uncovered {
            let sets: Vec<usize> = self.covering[e].iter().copied().filter(|&s| !self.excluded[s]).collect();
            if sets.iter().all(|s| !used.contains(s)) {
                packing += 1;
                used.extend(sets);
            }
        }
        let max_gain = self
            .covering
            .iter()
            .flatten()
            .filter(|&&s| !self.excluded[s])
            .map(|&s| self.masks[s].count_new(covered) as usize)
            .max()
            .unwrap_or(0);
        let by_size = if max_gain == 0 { usize::MAX / 2 } else { uncovered.len().div_ceil(max_gain) };
        packing.max(by_size)
    }
}

/// Elements (internal windows of every path) and, for each node that lies on
/// one, the element indices it hits.
pub fn window_hitting_instance(paths: &[Lightpath], d: usize) -> (Vec<PathElement>, BTreeMap<NodeId, Vec<usize>>) {
    let mut elements: Vec<PathElement> = Vec::new();
    let mut index: BTreeMap<PathElement, usize> = BTreeMap::new();
    for p in paths {
        for w in internal_windows(p, d) {
            if !index.contains_key(&w) {
                index.insert(w.clone(), elements.len());
                elements.push(w);
            }
        }
    }
    let mut hits: BTreeMap<NodeId, Vec<usize>> = BTreeMap::new();
    for (i, e) in elements.iter().enumerate() {
        for &v in e.nodes() {
            hits.entry(v).or_default().push(i);
        }
    }
    (elements, hits)
}

/// Minimum number of locations on any topology, as a minimum hitting set of
/// all internal windows.
pub fn opt_rlp_general(
    topology: &Topology,
    paths: &[Lightpath],
    d: usize,
    limits: &OracleLimits,
) -> Result<OracleResult> {
    for p in paths {
        topology.check_path(p)?;
    }
    let (elements, hits) = window_hitting_instance(paths, d);
    let nodes: Vec<NodeId> = hits.keys().copied().collect();
    let sets: Vec<Vec<usize>> = hits.into_values().collect();
    let solution = if elements.len() > limits.max_elements {
        greedy_set_cover(elements.len(), &sets)?
    } else {
        exact_set_cover(elements.len(), &sets, limits.max_candidates)?
    };
    let witness: BTreeSet<NodeId> = solution.chosen.iter().map(|&i| nodes[i]).collect();
    Ok(OracleResult {
        objective: witness.len(),
        witness: Witness::Nodes { nodes: witness },
        method: if solution.optimal { OracleMethod::ExactSetCover } else { OracleMethod::GreedyBound },
        optimal: solution.optimal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::is_d_satisfied_by_nodes;
    use crate::oracle::opt_rlp_path;

    #[test]
    fn small_cover() {
        // {0,1}, {1,2}, {2,3}, {0,3}: two sets suffice.
        let sets = vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]];
        let s = exact_set_cover(4, &sets, 30).unwrap();
        assert_eq!(s.chosen.len(), 2);
        assert!(s.optimal);
    }

    #[test]
    fn greedy_is_not_optimal_here() {
        // Greedy takes the straddling set first and then needs two more.
        let sets = vec![vec![0, 1, 2], vec![3, 4, 5], vec![0, 1, 3, 4]];
        let g = greedy_set_cover(6, &sets).unwrap();
        let e = exact_set_cover(6, &sets, 30).unwrap();
        assert_eq!(g.chosen.len(), 3);
        assert_eq!(e.chosen, vec![0, 1]);
    }

    #[test]
    fn uncoverable() {
        assert_eq!(exact_set_cover(3, &[vec![0], vec![1]], 30), Err(Error::UncoverableElement));
    }

    #[test]
    fn candidate_limit_falls_back_to_greedy() {
        let sets: Vec<Vec<usize>> = (0..10).map(|i| vec![i]).collect();
        let s = exact_set_cover(10, &sets, 5).unwrap();
        assert!(!s.optimal);
        assert_eq!(s.chosen.len(), 10);
    }

    #[test]
    fn general_matches_path_oracle() {
        let t = Topology::path(12).unwrap();
        let paths = vec![Lightpath::between(0, 0, 6), Lightpath::between(1, 4, 11), Lightpath::between(2, 9, 2)];
        for d in 2..5 {
            let g = opt_rlp_general(&t, &paths, d, &OracleLimits::default()).unwrap();
            assert!(g.optimal);
            assert_eq!(g.objective, opt_rlp_path(&paths, d).objective);
            let nodes = g.nodes().unwrap();
            assert!(paths.iter().all(|p| is_d_satisfied_by_nodes(p, nodes, d)));
        }
    }

    #[test]
    fn universal_node() {
        // Star: every path runs through the center 0 as an internal node.
        let edges = [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)];
        let t = Topology::general(7, edges).unwrap();
        let paths = vec![
            Lightpath::new(0, vec![2, 1, 0, 3]),
            Lightpath::new(1, vec![1, 0, 5, 6]),
            Lightpath::new(2, vec![4, 3, 0, 5]),
        ];
        let r = opt_rlp_general(&t, &paths, 2, &OracleLimits::default()).unwrap();
        assert_eq!(r.objective, 1);
        assert_eq!(r.nodes().unwrap(), &BTreeSet::from([0]));
    }
}
