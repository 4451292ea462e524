use linealloc::policies::reference::{gale_shapley_by_rounds, ugs_by_events};
use linealloc::policies::{
    allocate, brute_force_optimal, gale_shapley, load_profile, mtr, optimal_by_flow, optimal_dp, ugs, Assignment,
    Policy, SpatialInstance,
};
use proptest::prelude::*;

fn cumulative(gaps: &[f64]) -> Vec<f64> {
    let mut x = 0.0;
    gaps.iter()
        .map(|g| {
            x += g;
            x
        })
        .collect()
}

fn instance(max_users: usize, max_servers: usize, max_cap: u32) -> impl Strategy<Value = SpatialInstance> {
    (
        prop::collection::vec(0.0f64..3.0, 0..=max_users),
        prop::collection::vec((0.0f64..3.0, 1..=max_cap), 0..=max_servers),
    )
        .prop_map(|(ug, sg)| {
            let (gaps, caps): (Vec<f64>, Vec<u32>) = sg.into_iter().unzip();
            SpatialInstance::new(cumulative(&ug), cumulative(&gaps), caps).unwrap()
        })
}

/// Integer positions make distance ties and co-location common.
fn lattice_instance() -> impl Strategy<Value = SpatialInstance> {
    (prop::collection::vec(0u32..6, 0..10), prop::collection::vec((0u32..6, 1u32..3), 0..10)).prop_map(
        |(mut u, mut s)| {
            u.sort();
            s.sort();
            SpatialInstance::new(
                u.into_iter().map(f64::from).collect(),
                s.iter().map(|p| f64::from(p.0)).collect(),
                s.iter().map(|p| p.1).collect(),
            )
            .unwrap()
        },
    )
}

/// Adds a far-right server able to absorb everyone, so every policy matches
/// every user.
fn saturate(inst: &SpatialInstance) -> SpatialInstance {
    let end = inst.users().iter().chain(inst.servers()).fold(0.0f64, |a, &b| a.max(b)) + 10.0;
    let mut servers = inst.servers().to_vec();
    let mut caps = inst.capacities().to_vec();
    servers.push(end);
    caps.push(inst.users().len().max(1) as u32);
    SpatialInstance::new(inst.users().to_vec(), servers, caps).unwrap()
}

/// Global greedy over all user/slot pairs by (distance, user, server).
fn greedy_by_distance(inst: &SpatialInstance) -> Vec<Option<usize>> {
    let mut pairs = Vec::new();
    for (i, r) in inst.users().iter().enumerate() {
        for (j, s) in inst.servers().iter().enumerate() {
            pairs.push(((s - r).abs(), i, j));
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut left = inst.capacities().to_vec();
    let mut m = vec![None; inst.users().len()];
    for (_, i, j) in pairs {
        if m[i].is_none() && left[j] > 0 {
            m[i] = Some(j);
            left[j] -= 1;
        }
    }
    m
}

fn blocking_pair(inst: &SpatialInstance, a: &Assignment) -> Option<(usize, usize)> {
    let loads = a.server_loads(inst.servers().len());
    for (i, &r) in inst.users().iter().enumerate() {
        let current = a.distances[i].unwrap_or(f64::INFINITY);
        for (j, &s) in inst.servers().iter().enumerate() {
            let d = (s - r).abs();
            if d >= current {
                continue;
            }
            let server_wants = loads[j] < inst.capacities()[j]
                || a.matches.iter().enumerate().any(|(k, m)| *m == Some(j) && (inst.users()[k] - s).abs() > d);
            if server_wants {
                return Some((i, j));
            }
        }
    }
    None
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn capacities_respected(inst in instance(12, 12, 3)) {
        for p in Policy::ALL {
            if let Ok(a) = allocate(p, &inst) {
                prop_assert!(a.validate(&inst).is_ok(), "{p}");
                let sum: f64 = a.matched_distances().sum();
                prop_assert!((sum - a.total_cost).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn ugs_matches_event_replay(inst in instance(12, 12, 3)) {
        prop_assert_eq!(ugs(&inst).matches, ugs_by_events(&inst).matches);
    }

    #[test]
    fn ugs_matches_event_replay_with_ties(inst in lattice_instance()) {
        prop_assert_eq!(ugs(&inst).matches, ugs_by_events(&inst).matches);
    }

    #[test]
    fn gs_matches_mutual_nearest_rounds(inst in instance(12, 12, 3)) {
        prop_assert_eq!(gale_shapley(&inst).matches, gale_shapley_by_rounds(&inst).matches);
    }

    #[test]
    fn gs_matches_greedy_with_ties(inst in lattice_instance()) {
        prop_assert_eq!(gale_shapley(&inst).matches, greedy_by_distance(&inst));
    }

    #[test]
    fn gs_is_stable(inst in instance(12, 12, 3)) {
        let a = gale_shapley(&inst);
        prop_assert_eq!(blocking_pair(&inst, &a), None);
    }

    #[test]
    fn mtr_and_ugs_profiles_agree(inst in instance(30, 30, 3)) {
        let inst = saturate(&inst);
        let pm = load_profile(&inst, &mtr(&inst)).unwrap();
        let pu = load_profile(&inst, &ugs(&inst)).unwrap();
        prop_assert_eq!(&pm, &pu);
        for &(a, b) in &pm.busy_cycles {
            prop_assert!(inst.users().contains(&a) && inst.servers().contains(&b));
            let cost = |asg: &Assignment| -> f64 {
                asg.matches.iter().enumerate()
                    .filter_map(|(i, m)| m.map(|j| (inst.users()[i], inst.servers()[j])))
                    .filter(|&(r, s)| r >= a && s <= b)
                    .map(|(r, s)| s - r)
                    .sum()
            };
            let (cm, cu) = (cost(&mtr(&inst)), cost(&ugs(&inst)));
            prop_assert!((cm - cu).abs() < 1e-9);
            prop_assert!((cm - pm.integral(a, b)).abs() < 1e-9);
        }
    }

    #[test]
    fn mtr_and_ugs_profiles_agree_with_ties(inst in lattice_instance()) {
        let inst = saturate(&inst);
        let pm = load_profile(&inst, &mtr(&inst)).unwrap();
        let pu = load_profile(&inst, &ugs(&inst)).unwrap();
        prop_assert_eq!(pm, pu);
    }

    #[test]
    fn dp_equals_brute_force(inst in instance(6, 9, 3)) {
        prop_assume!(inst.users().len() <= inst.total_capacity());
        let dp = optimal_dp(&inst).unwrap();
        let bf = brute_force_optimal(&inst).unwrap();
        prop_assert!((dp.total_cost - bf.total_cost).abs() < 1e-9);
        prop_assert_eq!(dp.matched_count(), inst.users().len());
    }

    #[test]
    fn flow_formulation_equals_band_dp(inst in instance(60, 60, 3)) {
        prop_assume!(inst.users().len() <= inst.total_capacity());
        let dp = optimal_dp(&inst).unwrap();
        let flow = optimal_by_flow(&inst).unwrap();
        prop_assert!((dp.total_cost - flow.total_cost).abs() <= 1e-9 * (1.0 + dp.total_cost));
        prop_assert_eq!(flow.matched_count(), inst.users().len());
        flow.validate(&inst).unwrap();
    }

    #[test]
    fn dp_is_non_crossing_and_cheapest(inst in instance(25, 25, 3)) {
        let inst = saturate(&inst);
        let dp = optimal_dp(&inst).unwrap();
        let servers: Vec<usize> = dp.matches.iter().map(|m| m.unwrap()).collect();
        prop_assert!(servers.windows(2).all(|w| w[0] <= w[1]));
        for p in [Policy::Mtr, Policy::Ugs, Policy::GaleShapley] {
            let other = allocate(p, &inst).unwrap();
            prop_assert_eq!(other.matched_count(), inst.users().len());
            prop_assert!(dp.total_cost <= other.total_cost + 1e-9, "{}", p);
        }
    }
}
