//! Online set cover by weight doubling and randomized rounding.
//!
//! Every set starts with weight `1/f`. When an uncovered element arrives,
//! the weights of its sets are scaled by the smallest power of two that lifts
//! their sum to at least one, and then `ceil(4 log2 |X|)` rounds each add at
//! most one of those sets, set `j` with probability `delta_j / 2`. If the
//! rounds miss, the heaviest set of the element is added so the element is
//! always covered on return.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

pub type SetId = usize;

/// Largest doubling exponent tried before giving up.
pub const MAX_DOUBLINGS: u32 = 64;

#[derive(Debug, Clone)]
pub struct SetCoverState {
    weights: BTreeMap<SetId, f64>,
    frequency_bound: usize,
    universe_bound: u64,
    rounds: usize,
    cover: BTreeSet<SetId>,
    rng: ChaCha8Rng,
}

/// What one presentation did; `added` is what [`SetCoverState::present`]
/// returns.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    pub added: Vec<SetId>,
    /// `None` when the element was already covered.
    pub doublings: Option<u32>,
    pub increments: Vec<(SetId, f64)>,
    pub used_fallback: bool,
}

/// `ceil(4 * log2(universe_bound))`.
pub fn rounds_for(universe_bound: u64) -> usize {
    (4.0 * (universe_bound as f64).log2()).ceil() as usize
}

/// Smallest `q >= 0` with `2^q * weight >= 1`.
pub fn doubling_exponent(weight: f64) -> Result<u32> {
    if weight.is_nan() || weight <= 0.0 {
        return Err(Error::WeightOverflow(MAX_DOUBLINGS));
    }
    let mut q = 0;
    let mut scaled = weight;
    while scaled < 1.0 {
        q += 1;
        if q > MAX_DOUBLINGS {
            return Err(Error::WeightOverflow(MAX_DOUBLINGS));
        }
        scaled *= 2.0;
    }
    Ok(q)
}

impl SetCoverState {
    pub fn new<I>(set_ids: I, frequency_bound: usize, universe_bound: u64, seed: u64) -> Result<Self>
    where
        I: IntoIterator<Item = SetId>,
    {
        if frequency_bound == 0 {
            return Err(Error::InvalidConfig("frequency bound must be at least 1".into()));
        }
        if universe_bound < 2 {
            return Err(Error::InvalidConfig("universe size bound must be at least 2".into()));
        }
        let initial = 1.0 / frequency_bound as f64;
        Ok(Self {
            weights: set_ids.into_iter().map(|s| (s, initial)).collect(),
            frequency_bound,
            universe_bound,
            rounds: rounds_for(universe_bound),
            cover: BTreeSet::new(),
            rng: ChaCha8Rng::seed_from_u64(seed),
        })
    }

    pub fn weight(&self, set: SetId) -> Option<f64> {
        self.weights.get(&set).copied()
    }

    pub fn frequency_bound(&self) -> usize {
        self.frequency_bound
    }

    pub fn universe_bound(&self) -> u64 {
        self.universe_bound
    }

    pub fn rounds_per_element(&self) -> usize {
        self.rounds
    }

    pub fn cover(&self) -> &BTreeSet<SetId> {
        &self.cover
    }

    pub fn is_covered(&self, element_sets: &[SetId]) -> bool {
        element_sets.iter().any(|s| self.cover.contains(s))
    }

    /// Presents one element given as the list of sets containing it.
    /// Returns the sets newly added to the cover, ascending.
    pub fn present(&mut self, element_sets: &[SetId]) -> Result<Vec<SetId>> {
        self.present_detailed(element_sets).map(|p| p.added)
    }

    pub fn present_detailed(&mut self, element_sets: &[SetId]) -> Result<Presentation> {
        let sets: BTreeSet<SetId> = element_sets.iter().copied().collect();
        if sets.is_empty() {
            return Err(Error::UncoverableElement);
        }
        if sets.len() > self.frequency_bound {
            return Err(Error::FrequencyBoundExceeded { found: sets.len(), bound: self.frequency_bound });
        }
        if let Some(&unknown) = sets.iter().find(|s| !self.weights.contains_key(s)) {
            return Err(Error::UnknownSet(unknown));
        }
        if sets.iter().any(|s| self.cover.contains(s)) {
            return Ok(Presentation {
                added: Vec::new(),
                doublings: None,
                increments: Vec::new(),
                used_fallback: false,
            });
        }

        let total: f64 = sets.iter().map(|s| self.weights[s]).sum();
        let q = doubling_exponent(total)?;
        let factor = 2f64.powi(q as i32);
        let increments: Vec<(SetId, f64)> = sets
            .iter()
            .map(|&s| {
                let w = self.weights.get_mut(&s).expect("checked above");
                let delta = factor * *w - *w;
                *w += delta;
                (s, delta)
            })
            .collect();

        let mut added = BTreeSet::new();
        for _ in 0..self.rounds {
            let u: f64 = self.rng.gen();
            let mut acc = 0.0;
            for &(s, delta) in &increments {
                acc += delta / 2.0;
                if u < acc {
                    if self.cover.insert(s) {
                        added.insert(s);
                    }
                    break;
                }
            }
        }

        let used_fallback = added.is_empty();
        if used_fallback {
            // Heaviest set, smallest id on ties.
            let heaviest = sets
                .iter()
                .copied()
                .fold(None::<(SetId, f64)>, |best, s| {
                    let w = self.weights[&s];
                    match best {
                        Some((_, bw)) if bw >= w => best,
                        _ => Some((s, w)),
                    }
                })
                .map(|(s, _)| s)
                .expect("non-empty");
            self.cover.insert(heaviest);
            added.insert(heaviest);
        }

        Ok(Presentation { added: added.into_iter().collect(), doublings: Some(q), increments, used_fallback })
    }
}
