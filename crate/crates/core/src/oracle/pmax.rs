use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::model::{Lightpath, NodeId, PathId};

use super::{OracleLimits, OracleMethod, OracleResult, Witness};

/// Assigns each node to at most one path so that every path's trimmed
/// edges are vertex-covered by its own nodes (`d = 2`, `k = 1` on a line).
///
/// Scans nodes left to right keeping, for each node, which owners are
/// reachable; an edge constraint only involves two neighbouring nodes, so
/// this search is exact. Returns `None` if no assignment exists.
pub fn pmax_feasible_owners(paths: &[Lightpath]) -> Option<BTreeMap<NodeId, PathId>> {
    let spans: Vec<(PathId, NodeId, NodeId)> = paths
        .iter()
        .map(|p| {
            let (lo, hi) = p.span();
            (p.id, lo, hi)
        })
        .filter(|&(_, lo, hi)| hi - lo >= 3)
        .collect();
    if spans.is_empty() {
        return Some(BTreeMap::new());
    }
    let first = spans.iter().map(|s| s.1 + 1).min().unwrap();
    let last = spans.iter().map(|s| s.2 - 1).max().unwrap();

    // Options per node: None, then each path internal there (ascending id).
    let options: Vec<Vec<Option<PathId>>> = (first..=last)
        .map(|v| {
            let mut o = vec![None];
            let mut ids: Vec<PathId> = spans.iter().filter(|s| s.1 < v && v < s.2).map(|s| s.0).collect();
            ids.sort_unstable();
            o.extend(ids.into_iter().map(Some));
            o
        })
        .collect();
    // Paths that need edge (v, v+1) covered.
    let needs = |v: NodeId| spans.iter().filter(move |s| s.1 < v && v + 1 < s.2).map(|s| s.0);

    // reach[i][j] is Some(parent) when option j at node first+i extends a
    // consistent prefix whose previous node used option `parent`.
    let mut reach: Vec<Vec<Option<usize>>> = vec![vec![Some(usize::MAX); options[0].len()]];
    for i in 1..options.len() {
        let v = first + i - 1;
        let req: Vec<PathId> = needs(v).collect();
        let row: Vec<Option<usize>> = options[i]
            .iter()
            .map(|cur| {
                (0..options[i - 1].len()).find(|&j| {
                    reach[i - 1][j].is_some() && {
                        let prev = options[i - 1][j];
                        req.iter().all(|&p| prev == Some(p) || *cur == Some(p))
                    }
                })
            })
            .collect();
        if row.iter().all(Option::is_none) {
            return None;
        }
        reach.push(row);
    }

    let mut owners = BTreeMap::new();
    let mut j = reach.last().unwrap().iter().position(Option::is_some)?;
    for i in (0..options.len()).rev() {
        if let Some(p) = options[i][j] {
            owners.insert(first + i, p);
        }
        if i > 0 {
            j = reach[i][j].expect("reachable");
        }
    }
    Some(owners)
}

pub fn is_feasible_pmax(paths: &[Lightpath]) -> bool {
    pmax_feasible_owners(paths).is_some()
}

/// True iff every selected path is 2-satisfied by the nodes it owns, and
/// owners only serve selected paths at their internal nodes.
pub fn validate_pmax_witness(paths: &[Lightpath], selected: &[PathId], owners: &BTreeMap<NodeId, PathId>) -> bool {
    let chosen: BTreeSet<PathId> = selected.iter().copied().collect();
    let by_id: BTreeMap<PathId, &Lightpath> = paths.iter().map(|p| (p.id, p)).collect();
    owners.iter().all(|(&v, p)| chosen.contains(p) && by_id.get(p).is_some_and(|path| path.is_internal(v)))
        && chosen.iter().all(|id| {
            by_id.get(id).is_some_and(|p| crate::pmax::covers_trimmed_edges(p, |v| owners.get(&v) == Some(id)))
        })
}

/// Largest subset of `paths` that can be satisfied together.
pub fn opt_pmax(paths: &[Lightpath], limits: &OracleLimits) -> Result<OracleResult> {
    if paths.len() > limits.max_pmax_paths {
        return Err(Error::OracleLimit(format!(
            "{} paths exceed the exact limit of {}",
            paths.len(),
            limits.max_pmax_paths
        )));
    }
    let mut search = SubsetSearch { paths, current: Vec::new(), best: Vec::new() };
    search.run(0);
    let selected: Vec<&Lightpath> = search.best.iter().map(|&i| &paths[i]).collect();
    let owned: Vec<Lightpath> = selected.iter().map(|p| (*p).clone()).collect();
    let owners = pmax_feasible_owners(&owned).expect("best subset is feasible");
    let ids: Vec<PathId> = selected.iter().map(|p| p.id).collect();
    Ok(OracleResult {
        objective: ids.len(),
        witness: Witness::Pmax { selected: ids, owners },
        method: OracleMethod::Backtracking,
        optimal: true,
    })
}

struct SubsetSearch<'a> {
    paths: &'a [Lightpath],
    current: Vec<usize>,
    best: Vec<usize>,
}

impl SubsetSearch<'_> {
    fn run(&mut self, next: usize) {
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if next == self.paths.len() || self.current.len() + (self.paths.len() - next) <= self.best.len() {
            return;
        }
        self.current.push(next);
        let subset: Vec<Lightpath> = self.current.iter().map(|&i| self.paths[i].clone()).collect();
        if is_feasible_pmax(&subset) {
            self.run(next + 1);
        }
        self.current.pop();
        self.run(next + 1);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn line(id: PathId, a: NodeId, b: NodeId) -> Lightpath {
        Lightpath::between(id, a, b)
    }

    #[test]
    fn triple_path_is_infeasible() {
        let paths = vec![line(0, 0, 3), line(1, 0, 3), line(2, 0, 3)];
        assert!(!is_feasible_pmax(&paths));
        let r = opt_pmax(&paths, &OracleLimits::default()).unwrap();
        assert_eq!(r.objective, 2);
        let Witness::Pmax { selected, owners } = &r.witness else { panic!() };
        assert!(validate_pmax_witness(&paths, selected, owners));
    }

    #[test]
    fn two_paths_sharing_an_edge() {
        assert!(is_feasible_pmax(&[line(0, 0, 3), line(1, 0, 3)]));
        assert!(is_feasible_pmax(&[line(0, 0, 4), line(1, 2, 6)]));
    }

    #[test]
    fn feasible_instance_selects_everything() {
        let paths = vec![line(0, 0, 5), line(1, 1, 4), line(2, 6, 9), line(3, 7, 9)];
        assert!(is_feasible_pmax(&paths));
        let r = opt_pmax(&paths, &OracleLimits::default()).unwrap();
        assert_eq!(r.objective, 4);
    }

    #[test]
    fn witness_respects_cap_and_internal_nodes() {
        let paths = vec![line(0, 0, 6), line(1, 2, 5), line(2, 6, 3)];
        let owners = pmax_feasible_owners(&paths).unwrap();
        let ids: Vec<PathId> = paths.iter().map(|p| p.id).collect();
        assert!(validate_pmax_witness(&paths, &ids, &owners));
    }

    #[test]
    fn limit_is_enforced() {
        let paths: Vec<Lightpath> = (0..5).map(|i| line(i, 0, 3)).collect();
        let limits = OracleLimits { max_pmax_paths: 4, ..OracleLimits::default() };
        assert!(matches!(opt_pmax(&paths, &limits), Err(Error::OracleLimit(_))));
    }

    #[test]
    fn trivial_paths_always_fit() {
        let paths = vec![line(0, 0, 2), line(1, 0, 2), line(2, 1, 3), line(3, 0, 1)];
        assert!(is_feasible_pmax(&paths));
    }
}
