use super::{Assignment, Policy, SpatialInstance};
use crate::error::{Error, Result};

const BRUTE_MAX_USERS: usize = 8;
const BRUTE_MAX_LEAVES: f64 = 1e8;
/// Above this many band cells `optimal_dp` switches to the flow formulation.
const BAND_CELL_LIMIT: f64 = 4e7;

/// Minimum-total-distance assignment of every user.
///
/// With servers expanded into unit slots `t_1 ≤ … ≤ t_m` and users
/// `r_1 ≤ … ≤ r_n`, some optimal assignment is non-crossing, so user `i`
/// takes a slot `j ∈ [i, i + m − n]` and
/// `C[i, j] = min(C[i, j−1], |r_i − t_j| + C[i−1, j−1])`, `C[0, ·] = 0`.
/// Runs in `O(n (m − n + 1))` time; ties prefer using slot `j`.
pub fn optimal_dp(inst: &SpatialInstance) -> Result<Assignment> {
    let users = inst.users();
    let n = users.len();
    let slots = inst.slots();
    let m = slots.len();
    if n > m {
        return Err(Error::Infeasible { users: n, capacity: m });
    }
    if n == 0 {
        return Ok(Assignment::from_matches(Policy::Optimal, inst, Vec::new()));
    }
    let width = m - n + 1;
    if n as f64 * width as f64 > BAND_CELL_LIMIT {
        return optimal_by_flow(inst);
    }
    // row[t] = C[i, i + t] (1-based i, slot j = i + t)
    let mut row = vec![0.0f64; width];
    let mut took = vec![false; n * width];
    for i in 1..=n {
        let r = users[i - 1];
        let mut left = f64::INFINITY; // C[i, i + t − 1]
        for t in 0..width {
            let slot = slots[i - 1 + t].0;
            // row[t] still holds C[i−1, i−1+t]
            let with = (r - slot).abs() + row[t];
            let v = if with <= left {
                took[(i - 1) * width + t] = true;
                with
            } else {
                left
            };
            row[t] = v;
            left = v;
        }
    }

    let mut matches = vec![None; n];
    let (mut i, mut t) = (n, width - 1);
    while i > 0 {
        if took[(i - 1) * width + t] {
            matches[i - 1] = Some(slots[i - 1 + t].1);
            i -= 1;
        } else {
            // t > 0 here: at t = 0 the left option is infinite
            t -= 1;
        }
    }
    Ok(Assignment::from_matches(Policy::Optimal, inst, matches))
}

/// Same optimum as [`optimal_dp`], found through the net flow `f` across each
/// gap (users minus used slots to the left). The cost is `∫ |f| dx`; `f`
/// steps up at a user and optionally down at a slot. The dynamic program
/// keeps `f` in a window `[−K, K]` and doubles `K` until the optimal path
/// stays strictly inside it, which by convexity makes it globally optimal.
/// Runs in `O((n + m) K)`, where `K` tracks the largest imbalance.
pub fn optimal_by_flow(inst: &SpatialInstance) -> Result<Assignment> {
    let users = inst.users();
    let n = users.len();
    let slots = inst.slots();
    let m = slots.len();
    if n > m {
        return Err(Error::Infeasible { users: n, capacity: m });
    }
    if n == 0 {
        return Ok(Assignment::from_matches(Policy::Optimal, inst, Vec::new()));
    }
    // (position, slot index or None for a user)
    let mut events: Vec<(f64, Option<usize>)> = Vec::with_capacity(n + m);
    let (mut a, mut b) = (0, 0);
    while a < n || b < m {
        if b == m || (a < n && users[a] <= slots[b].0) {
            events.push((users[a], None));
            a += 1;
        } else {
            events.push((slots[b].0, Some(b)));
            b += 1;
        }
    }

    let mut bound = 16usize;
    loop {
        let (below, above) = (bound.min(m), bound.min(n));
        if let Some(used) = flow_window(&events, m, below, above) {
            let matches = used.iter().map(|&t| Some(slots[t].1)).collect();
            return Ok(Assignment::from_matches(Policy::Optimal, inst, matches));
        }
        bound *= 2;
    }
}

/// Optimal used slots with `f ∈ [−below, above]`, or `None` when the optimal
/// path touches a window edge that is tighter than the true range `[−m, n]`.
fn flow_window(events: &[(f64, Option<usize>)], m: usize, below: usize, above: usize) -> Option<Vec<usize>> {
    let width = below + above + 1;
    let words = width.div_ceil(64);
    let mut v = vec![f64::INFINITY; width];
    v[below] = 0.0;
    let mut took = vec![0u64; m * words];
    let mut prev = events[0].0;
    for &(x, slot) in events {
        let gap = x - prev;
        prev = x;
        if gap > 0.0 {
            for (idx, val) in v.iter_mut().enumerate() {
                *val += gap * (idx as f64 - below as f64).abs();
            }
        }
        match slot {
            None => {
                v.copy_within(0..width - 1, 1);
                v[0] = f64::INFINITY;
            }
            Some(t) => {
                for idx in 0..width - 1 {
                    if v[idx + 1] <= v[idx] {
                        v[idx] = v[idx + 1];
                        took[t * words + idx / 64] |= 1 << (idx % 64);
                    }
                }
            }
        }
    }

    if v[below].is_infinite() {
        return None;
    }
    let mut used = Vec::new();
    let mut idx = below;
    let (mut lo, mut hi) = (below, below);
    for &(_, slot) in events.iter().rev() {
        match slot {
            None => idx -= 1,
            Some(t) => {
                if took[t * words + idx / 64] >> (idx % 64) & 1 == 1 {
                    used.push(t);
                    idx += 1;
                }
            }
        }
        lo = lo.min(idx);
        hi = hi.max(idx);
    }
    let clipped = (lo == 0 && below < m) || (hi == width - 1 && above < events.len() - m);
    if clipped {
        return None;
    }
    used.reverse();
    Some(used)
}

/// Exhaustive minimum over all capacity-feasible assignments of every user,
/// with branch-and-bound. Only for tiny instances.
pub fn brute_force_optimal(inst: &SpatialInstance) -> Result<Assignment> {
    let users = inst.users();
    let servers = inst.servers();
    let n = users.len();
    if n > BRUTE_MAX_USERS {
        return Err(Error::TooLarge(format!("{n} users (limit {BRUTE_MAX_USERS})")));
    }
    if (servers.len() as f64).powi(n as i32) > BRUTE_MAX_LEAVES {
        return Err(Error::TooLarge(format!("{} servers ^ {n} users", servers.len())));
    }
    if n > inst.total_capacity() {
        return Err(Error::Infeasible { users: n, capacity: inst.total_capacity() });
    }
    // nearest-server distance bounds the remaining cost from below
    let nearest: Vec<f64> =
        users.iter().map(|r| servers.iter().map(|s| (s - r).abs()).fold(f64::INFINITY, f64::min)).collect();
    let mut suffix = vec![0.0; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] + nearest[i];
    }

    struct Search<'a> {
        users: &'a [f64],
        servers: &'a [f64],
        suffix: Vec<f64>,
        remaining: Vec<u32>,
        current: Vec<usize>,
        best: Option<(f64, Vec<usize>)>,
    }

    impl Search<'_> {
        fn go(&mut self, i: usize, cost: f64) {
            if let Some((b, _)) = &self.best {
                if cost + self.suffix[i] >= *b {
                    return;
                }
            }
            if i == self.users.len() {
                self.best = Some((cost, self.current.clone()));
                return;
            }
            for j in 0..self.servers.len() {
                if self.remaining[j] == 0 {
                    continue;
                }
                self.remaining[j] -= 1;
                self.current.push(j);
                self.go(i + 1, cost + (self.servers[j] - self.users[i]).abs());
                self.current.pop();
                self.remaining[j] += 1;
            }
        }
    }

    let mut search = Search {
        users,
        servers,
        suffix,
        remaining: inst.capacities().to_vec(),
        current: Vec::with_capacity(n),
        best: None,
    };
    search.go(0, 0.0);
    let chosen = search.best.map(|(_, v)| v).unwrap_or_default();
    let matches = chosen.into_iter().map(Some).collect();
    Ok(Assignment::from_matches(Policy::BruteForce, inst, matches))
}
