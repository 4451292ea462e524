//! Slow, direct implementations of the policy definitions, kept as oracles
//! for the fast versions.

use super::{Assignment, Policy, SpatialInstance};

/// UGS by replaying every (user, server) crossing in order of distance,
/// ties by lower user then lower server index.
pub fn ugs_by_events(inst: &SpatialInstance) -> Assignment {
    let users = inst.users();
    let servers = inst.servers();
    let mut events: Vec<(f64, usize, usize)> = Vec::new();
    for (i, &r) in users.iter().enumerate() {
        for (j, &s) in servers.iter().enumerate() {
            if s >= r {
                events.push((s - r, i, j));
            }
        }
    }
    events.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let mut remaining = inst.capacities().to_vec();
    let mut matches = vec![None; users.len()];
    for (_, i, j) in events {
        if matches[i].is_none() && remaining[j] > 0 {
            matches[i] = Some(j);
            remaining[j] -= 1;
        }
    }
    Assignment::from_matches(Policy::Ugs, inst, matches)
}

/// Gale–Shapley by rounds: every user points at its nearest free slot, every
/// slot at its nearest free user, and all mutual pairs are matched at once.
/// Nearest-ties go to the lower index.
pub fn gale_shapley_by_rounds(inst: &SpatialInstance) -> Assignment {
    let users = inst.users();
    let slots = inst.slots();
    let mut user_free = vec![true; users.len()];
    let mut slot_free = vec![true; slots.len()];
    let mut matches = vec![None; users.len()];
    loop {
        let nearest_slot: Vec<Option<usize>> = (0..users.len())
            .map(|i| {
                if !user_free[i] {
                    return None;
                }
                (0..slots.len())
                    .filter(|&k| slot_free[k])
                    .min_by(|&a, &b| (slots[a].0 - users[i]).abs().total_cmp(&(slots[b].0 - users[i]).abs()))
            })
            .collect();
        let mut progressed = false;
        for i in 0..users.len() {
            let Some(k) = nearest_slot[i] else { continue };
            let back = (0..users.len())
                .filter(|&u| user_free[u])
                .min_by(|&a, &b| (slots[k].0 - users[a]).abs().total_cmp(&(slots[k].0 - users[b]).abs()));
            if back == Some(i) {
                matches[i] = Some(slots[k].1);
                progressed = true;
            }
        }
        for i in 0..users.len() {
            if let (Some(k), Some(_)) = (nearest_slot[i], matches[i]) {
                if user_free[i] {
                    user_free[i] = false;
                    slot_free[k] = false;
                }
            }
        }
        if !progressed {
            break;
        }
    }
    Assignment::from_matches(Policy::GaleShapley, inst, matches)
}
