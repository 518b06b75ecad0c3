use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use regen_core::baseline::{FirstFit, Pick};
use regen_core::generate::{random_path_rlp, random_pmax, random_ring_rlp, random_set_system, random_tree_rlp};
use regen_core::grid::GridState;
use regen_core::harness::{replay_pmax, replay_rlp};
use regen_core::model::{is_d_satisfied, regions, Topology};
use regen_core::online::{OnlinePmax, OnlineRlp};
use regen_core::oracle::{exact_set_cover, opt_rlp_path};
use regen_core::pmax::{covers_trimmed_edges, PmaxState, PmaxVariant};
use regen_core::reduction::ReductionState;
use regen_core::set_cover::SetCoverState;
use regen_core::{Instance, Lightpath, NodeCap, RatioValue};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn grid_is_two_competitive(seed in any::<u64>(), d in 2usize..7) {
        let inst = random_path_rlp(&mut ChaCha8Rng::seed_from_u64(seed), 80, d, 15).unwrap();
        let mut g = GridState::deterministic(&inst.topology, d).unwrap();
        let online = replay_rlp(&mut g, &inst).unwrap();
        prop_assert!(online <= 2 * opt_rlp_path(&inst.paths, d).objective);
    }

    #[test]
    fn every_grid_offset_serves_every_path(seed in any::<u64>(), d in 2usize..6) {
        let inst = random_path_rlp(&mut ChaCha8Rng::seed_from_u64(seed), 60, d, 10).unwrap();
        for offset in 0..=d {
            let mut g = GridState::with_offset(&inst.topology, d, offset).unwrap();
            replay_rlp(&mut g, &inst).unwrap();
        }
    }

    #[test]
    fn first_fit_serves_rings(seed in any::<u64>(), d in 2usize..4) {
        let inst = random_ring_rlp(&mut ChaCha8Rng::seed_from_u64(seed), 30, d, 8).unwrap();
        for pick in [Pick::First, Pick::Center, Pick::Last] {
            let mut a = FirstFit::new(&inst.topology, d, pick).unwrap();
            replay_rlp(&mut a, &inst).unwrap();
        }
    }

    #[test]
    fn reduction_cost_equals_cover(seed in any::<u64>(), d in 2usize..4) {
        let inst = random_tree_rlp(&mut ChaCha8Rng::seed_from_u64(seed), 30, d, 8).unwrap();
        let mut r = ReductionState::new(&inst.topology, d, seed).unwrap();
        for p in &inst.paths {
            r.present(p).unwrap();
            prop_assert!(is_d_satisfied(p, r.assignment(), d));
            prop_assert_eq!(r.cost(), r.set_cover().cover().len());
        }
    }

    #[test]
    fn online_set_cover_is_valid_and_monotone(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_set_system(&mut rng, 40, 10, 5);
        let membership = sys.membership();
        let mut osc = SetCoverState::new(0..sys.sets.len(), sys.max_frequency(), sys.element_count.max(2) as u64, seed).unwrap();
        let mut previous = BTreeSet::new();
        for m in &membership {
            osc.present(m).unwrap();
            prop_assert!(osc.is_covered(m));
            prop_assert!(previous.is_subset(osc.cover()));
            previous = osc.cover().clone();
        }
        let opt = exact_set_cover(sys.element_count, &sys.sets, 30).unwrap().chosen.len();
        prop_assert!(osc.cover().len() >= opt);
    }

    #[test]
    fn set_cover_weights_only_grow(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_set_system(&mut rng, 30, 8, 4);
        let mut osc = SetCoverState::new(0..sys.sets.len(), sys.max_frequency(), 30, seed).unwrap();
        let mut before: Vec<f64> = (0..sys.sets.len()).map(|j| osc.weight(j).unwrap()).collect();
        for m in sys.membership() {
            osc.present(&m).unwrap();
            let after: Vec<f64> = (0..sys.sets.len()).map(|j| osc.weight(j).unwrap()).collect();
            prop_assert!(before.iter().zip(&after).all(|(b, a)| a >= b));
            before = after;
        }
    }

    #[test]
    fn pmax_accepted_paths_stay_served(seed in any::<u64>(), two_start in any::<bool>()) {
        let inst = random_pmax(&mut ChaCha8Rng::seed_from_u64(seed), 25, 14).unwrap();
        let variant = if two_start { PmaxVariant::TwoStart } else { PmaxVariant::Sweep };
        let mut a = PmaxState::new(&inst.topology, 2, NodeCap::Bounded(1), variant).unwrap();
        let (decisions, online) = replay_pmax(&mut a, &inst).unwrap();
        prop_assert_eq!(online, a.satisfied().len());
        for (p, d) in inst.paths.iter().zip(&decisions) {
            prop_assert_eq!(d.is_satisfied(), covers_trimmed_edges(p, |v| a.assignment().has(v, p.id)));
        }
    }

    #[test]
    fn regions_partition_internal_nodes(seed in any::<u64>()) {
        let inst = random_path_rlp(&mut ChaCha8Rng::seed_from_u64(seed), 100, 3, 12).unwrap();
        let rs = regions(&inst.paths, &inst.topology).unwrap();
        for w in rs.windows(2) {
            prop_assert!(w[0].end + 1 < w[1].start);
        }
        for p in &inst.paths {
            let r: Vec<_> = rs.iter().filter(|r| p.internal().iter().any(|&v| r.contains(v))).collect();
            prop_assert_eq!(r.len(), 1);
        }
    }

    #[test]
    fn instance_json_round_trips(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for inst in [
            random_path_rlp(&mut rng, 50, 2, 5).unwrap(),
            random_ring_rlp(&mut rng, 20, 3, 5).unwrap(),
            random_pmax(&mut rng, 20, 5).unwrap(),
        ] {
            prop_assert_eq!(Instance::from_json(&inst.to_json()).unwrap(), inst);
        }
    }

    #[test]
    fn ratio_order_matches_cross_products(a in 0usize..50, b in 1usize..50, c in 0usize..50, e in 1usize..50) {
        let (x, y) = (RatioValue::of(a, b), RatioValue::of(c, e));
        prop_assert_eq!(x < y, a * e < c * b);
    }
}

#[test]
fn grid_rejects_foreign_paths() {
    let t = Topology::path(8).unwrap();
    let mut g = GridState::deterministic(&t, 2).unwrap();
    assert!(g.present(&Lightpath::new(0, vec![0, 1, 3])).is_err());
    assert!(g.present(&Lightpath::new(1, vec![0, 1, 2, 9])).is_err());
}

#[test]
fn pmax_respects_cap() {
    let t = Topology::path(12).unwrap();
    let mut a = PmaxState::sweep(&t).unwrap();
    for (i, (x, y)) in [(0, 11), (1, 9), (2, 7), (0, 5), (3, 10)].into_iter().enumerate() {
        a.present(&Lightpath::between(i, x, y)).unwrap();
        for v in 0..12 {
            assert!(a.assignment().count(v) <= 1);
        }
    }
}
