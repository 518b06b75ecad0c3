use std::collections::BTreeSet;

use crate::model::{Lightpath, NodeId};

use super::{OracleMethod, OracleResult, Witness};

/// Windows of `d` consecutive internal vertices of every path on a line, as
/// inclusive intervals, deduplicated and sorted by right end.
pub fn path_windows(paths: &[Lightpath], d: usize) -> Vec<(NodeId, NodeId)> {
    let mut set = BTreeSet::new();
    for p in paths.iter().filter(|p| d > 0 && p.edge_count() > d) {
        let (lo, hi) = p.span();
        for start in lo + 1..=hi - d {
            set.insert((start + d - 1, start));
        }
    }
    set.into_iter().map(|(end, start)| (start, end)).collect()
}

/// Minimum number of locations on a path topology: stab every window,
/// always at the right end of the first window not yet stabbed.
pub fn opt_rlp_path(paths: &[Lightpath], d: usize) -> OracleResult {
    let mut nodes = BTreeSet::new();
    let mut last: Option<NodeId> = None;
    for (start, end) in path_windows(paths, d) {
        if last.is_some_and(|x| x >= start) {
            continue;
        }
        nodes.insert(end);
        last = Some(end);
    }
    OracleResult {
        objective: nodes.len(),
        witness: Witness::Nodes { nodes },
        method: OracleMethod::IntervalStabbing,
        optimal: true,
    }
}
