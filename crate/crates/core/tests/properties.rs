use std::collections::HashSet;

use dmc_core::candidates::{count_bounded_compositions, Compositions};
use dmc_core::cuts::{enumerate_min_cuts, is_min_cut};
use dmc_core::generate::{random_network, NetworkShape};
use dmc_core::maxflow::{check_one_more_unit, flow_value, max_flow};
use dmc_core::oracle::FlowTable;
use dmc_core::{
    audit_complexity, enumerate_candidates, find_all_dmcs, parse_network, verify, verify_flawed,
    ArcId, Network, StateVector,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn network_from_seed(seed: u64, shape: NetworkShape) -> Network {
    random_network(&mut ChaCha8Rng::seed_from_u64(seed), shape)
}

fn small() -> NetworkShape {
    NetworkShape::default()
}

fn random_state(rng: &mut impl Rng, net: &Network) -> StateVector {
    StateVector::new(
        net.arcs()
            .iter()
            .map(|a| rng.gen_range(0..=a.max_capacity))
            .collect(),
    )
}

/// Minimum over every node set containing the source and not the sink of
/// the capacity leaving it.
fn min_cut_capacity(net: &Network, x: &StateVector) -> u64 {
    let n = net.node_count();
    let (s, t) = (net.source().index(), net.sink().index());
    (0u32..1 << n)
        .filter(|mask| mask >> s & 1 == 1 && mask >> t & 1 == 0)
        .map(|mask| {
            net.arcs()
                .iter()
                .filter(|a| mask >> a.tail.index() & 1 == 1 && mask >> a.head.index() & 1 == 0)
                .map(|a| x.get(a.id))
                .sum()
        })
        .min()
        .unwrap()
}

fn separates(net: &Network, removed: u32) -> bool {
    let mut seen = vec![false; net.node_count()];
    seen[net.source().index()] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for a in net.arcs() {
            if removed >> a.id.index() & 1 == 0 && seen[a.tail.index()] && !seen[a.head.index()] {
                seen[a.head.index()] = true;
                changed = true;
            }
        }
    }
    !seen[net.sink().index()]
}

/// Minimal cuts from all `2^m` arc subsets.
fn subset_min_cuts(net: &Network) -> HashSet<Vec<ArcId>> {
    let m = net.arc_count();
    let cuts: HashSet<u32> = (0u32..1 << m).filter(|&s| separates(net, s)).collect();
    cuts.iter()
        .filter(|&&c| c != 0 && (0..m).all(|i| c >> i & 1 == 0 || !cuts.contains(&(c & !(1 << i)))))
        .map(|&c| {
            (0..m)
                .filter(|i| c >> i & 1 == 1)
                .map(ArcId::from_index)
                .collect()
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn parse_inverts_display(seed in any::<u64>()) {
        let net = network_from_seed(seed, small());
        prop_assert_eq!(parse_network(&net.to_string()).unwrap(), net);
    }

    #[test]
    fn bump_changes_exactly_one_component(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random_network(&mut rng, small());
        let x = random_state(&mut rng, &net);
        prop_assert!(net.unsaturated_set(&net.saturated_vector()).is_empty());
        let unsaturated = net.unsaturated_set(&x);
        for &arc in &unsaturated {
            let y = net.bump(&x, arc).unwrap();
            let diffs: Vec<usize> = (0..x.len()).filter(|&k| x.values()[k] != y.values()[k]).collect();
            prop_assert_eq!(diffs, vec![arc.index()]);
            prop_assert_eq!(y.get(arc), x.get(arc) + 1);
            let after: HashSet<ArcId> = net.unsaturated_set(&y).into_iter().collect();
            prop_assert!(after.iter().all(|a| unsaturated.contains(a)));
        }
    }

    #[test]
    fn max_flow_equals_min_cut(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random_network(&mut rng, NetworkShape { max_nodes: 7, max_arcs: 12, max_capacity: 5 });
        for _ in 0..8 {
            let x = random_state(&mut rng, &net);
            let fs = max_flow(&net, &x);
            prop_assert!(fs.is_feasible());
            prop_assert_eq!(fs.value(), min_cut_capacity(&net, &x));
            prop_assert!(!fs.residual_reachable());
        }
    }

    #[test]
    fn unit_step_raises_flow_by_at_most_one(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random_network(&mut rng, small());
        let x = random_state(&mut rng, &net);
        let w = flow_value(&net, &x);
        for arc in net.arc_ids() {
            let bumped = flow_value(&net, &x.bumped(arc));
            prop_assert!(w <= bumped && bumped <= w + 1);
        }
    }

    #[test]
    fn one_more_unit_matches_direct_inequality(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let net = random_network(&mut rng, small());
        let x = random_state(&mut rng, &net);
        let d = flow_value(&net, &x);
        for arc in net.unsaturated_set(&x) {
            let direct = flow_value(&net, &x.bumped(arc)) > d;
            prop_assert_eq!(check_one_more_unit(&net, &x, d, arc), Ok(direct));
            let fs = max_flow(&net, &x);
            prop_assert_eq!(fs.residual_reachable_after_bump(arc), direct);
        }
        if let Some(&arc) = net.unsaturated_set(&x).first() {
            prop_assert!(check_one_more_unit(&net, &x, d + 1, arc).is_err());
        }
    }

    #[test]
    fn min_cuts_match_subset_oracle(seed in any::<u64>()) {
        let net = network_from_seed(seed, NetworkShape { max_nodes: 7, max_arcs: 12, max_capacity: 3 });
        let cuts = enumerate_min_cuts(&net).unwrap();
        let got: HashSet<Vec<ArcId>> = cuts.iter().map(|c| c.arcs().to_vec()).collect();
        prop_assert_eq!(got.len(), cuts.len());
        prop_assert_eq!(&got, &subset_min_cuts(&net));
        prop_assert!(cuts.windows(2).all(|w| w[0] < w[1]));
        let full = flow_value(&net, &net.saturated_vector());
        for cut in &cuts {
            prop_assert!(is_min_cut(&net, cut.arcs()));
            prop_assert!(cut.capacities(&net).iter().sum::<u64>() >= full);
        }
    }

    #[test]
    fn candidates_satisfy_invariants(seed in any::<u64>(), d in 0u64..10) {
        let net = network_from_seed(seed, small());
        let w = net.saturated_vector();
        for (i, cut) in enumerate_min_cuts(&net).unwrap().iter().enumerate() {
            let all: Vec<_> = enumerate_candidates(&net, cut, i, d).collect();
            let distinct: HashSet<&StateVector> = all.iter().map(|c| &c.vector).collect();
            prop_assert_eq!(distinct.len(), all.len());
            prop_assert_eq!(all.len() as u64, dmc_core::count_candidates(&net, cut, d));
            for c in &all {
                prop_assert_eq!(c.cut_index, i);
                prop_assert!(net.check_state(&c.vector).is_ok());
                let on_cut: u64 = cut.arcs().iter().map(|&a| c.vector.get(a)).sum();
                prop_assert_eq!(on_cut, d);
                for a in net.arc_ids().filter(|a| !cut.contains(*a)) {
                    prop_assert_eq!(c.vector.get(a), w.get(a));
                }
            }
            prop_assert!(all.windows(2).all(|p| p[0].ordinal + 1 == p[1].ordinal));
        }
    }

    #[test]
    fn solver_matches_oracle(seed in any::<u64>()) {
        let net = network_from_seed(seed, small());
        let cuts = enumerate_min_cuts(&net).unwrap();
        let table = FlowTable::build(&net).unwrap();
        for d in 0..=table.max_flow_of_saturated() + 1 {
            let report = find_all_dmcs(&net, d, &cuts).unwrap();
            prop_assert_eq!(&report.dmcs, &table.dmcs(d));
            prop_assert!(audit_complexity(&report));
            for x in &report.dmcs {
                prop_assert!(verify(&net, x, d).is_dmc);
                prop_assert!(verify_flawed(&net, x, d).is_dmc);
            }
        }
    }

    #[test]
    fn dmcs_cover_the_level_set(seed in any::<u64>()) {
        let net = network_from_seed(seed, small());
        let table = FlowTable::build(&net).unwrap();
        for d in 0..table.max_flow_of_saturated() {
            let dmcs = table.dmcs(d);
            for (x, w) in table.states() {
                let covered = dmcs.iter().any(|y| x.dominated_by(y));
                prop_assert_eq!(covered, w <= d);
            }
        }
    }
}

#[test]
fn composition_stream_length_matches_count() {
    // every cap profile of length 1..=4 with caps in 0..=6
    let mut profiles: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..4 {
        profiles = profiles
            .iter()
            .flat_map(|p| (0..=6).map(move |c| [p.clone(), vec![c]].concat()))
            .collect();
        for caps in &profiles {
            let total: u64 = caps.iter().sum();
            for d in 0..=total + 1 {
                let stream: Vec<_> = Compositions::new(caps.clone(), d).collect();
                assert_eq!(
                    stream.len() as u64,
                    count_bounded_compositions(caps, d),
                    "{caps:?} d={d}"
                );
                assert!(stream.windows(2).all(|w| w[0] < w[1]));
            }
        }
    }
}

#[test]
fn solver_is_deterministic() {
    let net = network_from_seed(
        11,
        NetworkShape {
            max_nodes: 6,
            max_arcs: 8,
            max_capacity: 3,
        },
    );
    let cuts = enumerate_min_cuts(&net).unwrap();
    let first = find_all_dmcs(&net, 2, &cuts).unwrap();
    for _ in 0..5 {
        assert_eq!(find_all_dmcs(&net, 2, &cuts).unwrap(), first);
    }
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    assert_eq!(
        single.install(|| find_all_dmcs(&net, 2, &cuts).unwrap()),
        first
    );
}
