use super::SpatialInstance;

/// Shrink applied to each middle gap so the cross-block pair is strictly the
/// closest remaining one.
const DELTA: f64 = 1e-3;

/// Alternating user/server layout on which Gale–Shapley is far from optimal.
///
/// Gaps are built recursively: `G_1 = [1]`,
/// `G_t = G_{t−1} ++ [span(G_{t−1}) − δ] ++ G_{t−1}`, and points alternate
/// user, server, user, …, starting at 0. Level `t` has `2^{t−1}` users and
/// servers, and its largest gap is about `3^{t−2}`.
pub fn gs_worst_case(t: u32) -> SpatialInstance {
    let mut gaps = vec![1.0];
    for _ in 1..t.max(1) {
        let span: f64 = gaps.iter().sum();
        let mut next = gaps.clone();
        next.push(span - DELTA);
        next.extend_from_slice(&gaps);
        gaps = next;
    }
    let mut users = Vec::new();
    let mut servers = Vec::new();
    let mut x = 0.0;
    users.push(x);
    for (k, g) in gaps.iter().enumerate() {
        x += g;
        if k % 2 == 0 {
            servers.push(x);
        } else {
            users.push(x);
        }
    }
    // positions are increasing by construction
    SpatialInstance::with_capacity(users, servers, 1).expect("valid layout")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::policies::{gale_shapley, optimal_dp};

    #[test]
    fn sizes_and_level_two() {
        for t in 1..=6 {
            let inst = gs_worst_case(t);
            assert_eq!(inst.users().len(), 1 << (t - 1));
            assert_eq!(inst.servers().len(), 1 << (t - 1));
        }
        let inst = gs_worst_case(2);
        let gs = gale_shapley(&inst).total_cost;
        let opt = optimal_dp(&inst).unwrap().total_cost;
        assert!((opt - 2.0).abs() < 1e-12);
        assert!(gs > opt + 1.0);
    }
}
