//! A simple deterministic online algorithm for any topology, used as a
//! reference point against the grid and set-cover algorithms.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{windows_hit, Lightpath, LocationAssignment, NodeId, RegeneratorAssignment, Topology};
use crate::online::OnlineRlp;

/// Which node of an unserved window gets the new location.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Pick {
    First,
    Center,
    #[default]
    Last,
}

impl FromStr for Pick {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "first" => Ok(Pick::First),
            "center" => Ok(Pick::Center),
            "last" => Ok(Pick::Last),
            other => Err(Error::InvalidConfig(format!("unknown pick rule {other:?}"))),
        }
    }
}

/// Scans the arriving path's windows in path order and opens one location
/// in every window that no existing location hits.
#[derive(Debug, Clone)]
pub struct FirstFit {
    topology: Topology,
    d: usize,
    pick: Pick,
    placement: LocationAssignment,
}

impl FirstFit {
    pub fn new(topology: &Topology, d: usize, pick: Pick) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidConfig("d must be at least 1".into()));
        }
        Ok(Self { topology: topology.clone(), d, pick, placement: LocationAssignment::new() })
    }

    pub fn placement(&self) -> &LocationAssignment {
        &self.placement
    }
}

impl OnlineRlp for FirstFit {
    fn name(&self) -> String {
        match self.pick {
            Pick::Last => "first-fit".into(),
            Pick::First => "first-fit(first)".into(),
            Pick::Center => "first-fit(center)".into(),
        }
    }

    fn d(&self) -> usize {
        self.d
    }

    fn present(&mut self, path: &Lightpath) -> Result<Vec<NodeId>> {
        self.topology.check_path(path)?;
        self.placement.register(path);
        let internal = path.internal();
        let mut opened = Vec::new();
        if path.edge_count() > self.d {
            for w in internal.windows(self.d) {
                if w.iter().any(|&v| self.placement.is_located(v)) {
                    continue;
                }
                let v = match self.pick {
                    Pick::First => w[0],
                    Pick::Center => w[w.len() / 2],
                    Pick::Last => w[w.len() - 1],
                };
                self.placement.locate(v);
                opened.push(v);
            }
        }
        debug_assert!(windows_hit(path, self.d, |v| self.placement.is_located(v)));
        Ok(opened)
    }

    fn assignment(&self) -> &RegeneratorAssignment {
        self.placement.assignment()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::is_d_satisfied;
    use crate::oracle::opt_rlp_path;

    #[test]
    fn last_pick_is_optimal_on_single_paths() {
        let t = Topology::path(20).unwrap();
        for d in 2..6 {
            let p = Lightpath::between(0, 1, 18);
            let mut a = FirstFit::new(&t, d, Pick::Last).unwrap();
            a.present(&p).unwrap();
            assert!(is_d_satisfied(&p, a.assignment(), d));
            assert_eq!(a.cost(), opt_rlp_path(std::slice::from_ref(&p), d).objective);
        }
    }

    #[test]
    fn works_on_rings() {
        let t = Topology::ring(8).unwrap();
        let mut a = FirstFit::new(&t, 2, Pick::Center).unwrap();
        let p = Lightpath::new(0, vec![6, 7, 0, 1, 2, 3]);
        assert_eq!(a.present(&p).unwrap(), vec![0, 2]);
        assert!(is_d_satisfied(&p, a.assignment(), 2));
    }
}
