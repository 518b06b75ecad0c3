//! Grid algorithms for the location problem on a path topology.
//!
//! A grid is a residue class of node positions modulo `d`. When a lightpath
//! arrives, every grid node internal to it becomes a regenerator location.
//! Offset 0 is the deterministic 2-competitive algorithm; drawing the offset
//! uniformly from `1..=d` gives the randomized `(2 - 1/d^2)` algorithm.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::{Lightpath, LocationAssignment, NodeId, RegeneratorAssignment, Topology};
use crate::online::OnlineRlp;

#[derive(Debug, Clone)]
pub struct GridState {
    topology: Topology,
    d: usize,
    offset: usize,
    randomized: bool,
    placement: LocationAssignment,
}

impl GridState {
    pub fn deterministic(topology: &Topology, d: usize) -> Result<Self> {
        Self::with_offset(topology, d, 0)
    }

    /// Grid `{ v : v = offset (mod d) }`, `offset` in `0..=d`.
    pub fn with_offset(topology: &Topology, d: usize, offset: usize) -> Result<Self> {
        if !topology.is_path() {
            return Err(Error::NotPathTopology);
        }
        if d < 2 {
            return Err(Error::InvalidConfig(format!("grid algorithm needs d >= 2, got {d}")));
        }
        if offset > d {
            return Err(Error::InvalidConfig(format!("grid offset {offset} exceeds d={d}")));
        }
        Ok(Self { topology: topology.clone(), d, offset, randomized: false, placement: LocationAssignment::new() })
    }

    /// Draws the offset uniformly from `1..=d`.
    pub fn randomized(topology: &Topology, d: usize, seed: u64) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidConfig(format!("grid algorithm needs d >= 2, got {d}")));
        }
        let offset = draw_offset(d, seed);
        let mut state = Self::with_offset(topology, d, offset)?;
        state.randomized = true;
        Ok(state)
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn in_grid(&self, v: NodeId) -> bool {
        v % self.d == self.offset % self.d
    }

    pub fn placement(&self) -> &LocationAssignment {
        &self.placement
    }

    /// Serves `path`; returns the newly opened locations in ascending order.
    pub fn grid_present(&mut self, path: &Lightpath) -> Result<Vec<NodeId>> {
        self.topology.check_path(path)?;
        self.placement.register(path);
        if path.edge_count() <= self.d {
            return Ok(Vec::new());
        }
        let grid: Vec<NodeId> = path.internal().iter().copied().filter(|&v| self.in_grid(v)).collect();
        let mut opened: Vec<NodeId> = grid.into_iter().filter(|&v| self.placement.locate(v)).collect();
        opened.sort_unstable();
        Ok(opened)
    }
}

/// Uniform draw from `1..=d`, reproducible from `seed`.
pub fn draw_offset(d: usize, seed: u64) -> usize {
    ChaCha8Rng::seed_from_u64(seed).gen_range(1..=d)
}

impl OnlineRlp for GridState {
    fn name(&self) -> String {
        if self.randomized {
            format!("random-grid(offset={})", self.offset)
        } else if self.offset == 0 {
            "grid".into()
        } else {
            format!("grid(offset={})", self.offset)
        }
    }

    fn d(&self) -> usize {
        self.d
    }

    fn present(&mut self, path: &Lightpath) -> Result<Vec<NodeId>> {
        self.grid_present(path)
    }

    fn assignment(&self) -> &RegeneratorAssignment {
        self.placement.assignment()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::is_d_satisfied;

    fn line(n: usize) -> Topology {
        Topology::path(n).unwrap()
    }

    #[test]
    fn deterministic_trace() {
        let t = line(10);
        let mut g = GridState::deterministic(&t, 2).unwrap();
        let p = Lightpath::between(0, 0, 5);
        assert_eq!(g.grid_present(&p).unwrap(), vec![2, 4]);
        let q = Lightpath::between(1, 0, 5);
        assert_eq!(g.grid_present(&q).unwrap(), Vec::<NodeId>::new());
        assert_eq!(g.cost(), 2);
        assert!(is_d_satisfied(&q, g.assignment(), 2));
    }

    #[test]
    fn offset_grid_covers_every_window() {
        let t = line(10);
        let mut g = GridState::with_offset(&t, 3, 1).unwrap();
        let p = Lightpath::between(0, 0, 8);
        assert_eq!(g.grid_present(&p).unwrap(), vec![1, 4, 7]);
        assert!(is_d_satisfied(&p, g.assignment(), 3));
    }

    #[test]
    fn offset_d_matches_deterministic_grid() {
        let t = line(30);
        let mut a = GridState::with_offset(&t, 4, 4).unwrap();
        let mut b = GridState::deterministic(&t, 4).unwrap();
        for (i, (s, e)) in [(0, 9), (3, 17), (20, 29)].into_iter().enumerate() {
            let p = Lightpath::between(i, s, e);
            assert_eq!(a.grid_present(&p).unwrap(), b.grid_present(&p).unwrap());
        }
    }

    #[test]
    fn reversed_paths_are_served() {
        let t = line(10);
        let mut g = GridState::deterministic(&t, 3).unwrap();
        let p = Lightpath::between(0, 9, 2);
        assert_eq!(g.grid_present(&p).unwrap(), vec![3, 6]);
        assert!(is_d_satisfied(&p, g.assignment(), 3));
    }

    #[test]
    fn short_paths_cost_nothing() {
        let t = line(10);
        let mut g = GridState::deterministic(&t, 3).unwrap();
        assert!(g.grid_present(&Lightpath::between(0, 2, 5)).unwrap().is_empty());
        assert_eq!(g.cost(), 0);
    }

    #[test]
    fn rejects_general_topology_and_bad_params() {
        let ring = Topology::ring(6).unwrap();
        assert_eq!(GridState::deterministic(&ring, 2).unwrap_err(), Error::NotPathTopology);
        assert!(GridState::deterministic(&line(5), 1).is_err());
        assert!(GridState::with_offset(&line(5), 2, 3).is_err());
        let mut g = GridState::deterministic(&line(5), 2).unwrap();
        assert!(g.grid_present(&Lightpath::new(0, vec![0, 2, 3])).is_err());
    }

    #[test]
    fn randomized_offset_is_seeded() {
        let t = line(5);
        for seed in 0..50 {
            let a = GridState::randomized(&t, 5, seed).unwrap().offset();
            let b = GridState::randomized(&t, 5, seed).unwrap().offset();
            assert_eq!(a, b);
            assert!((1..=5).contains(&a));
        }
    }

    #[test]
    fn randomized_offset_frequencies() {
        for d in [2usize, 3, 5] {
            let trials = 10_000u64;
            let mut hist = vec![0u64; d + 1];
            for seed in 0..trials {
                hist[draw_offset(d, seed)] += 1;
            }
            assert_eq!(hist[0], 0);
            let p = 1.0 / d as f64;
            let mean = trials as f64 * p;
            let sigma = (trials as f64 * p * (1.0 - p)).sqrt();
            for &h in &hist[1..] {
                assert!((h as f64 - mean).abs() <= 3.0 * sigma, "d={d} hist={hist:?}");
            }
        }
    }
}
