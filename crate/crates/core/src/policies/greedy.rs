use super::{Assignment, Policy, SpatialInstance};

/// Move to right: users in order of position each take the leftmost server at
/// or beyond their position that still has spare capacity.
pub fn mtr(inst: &SpatialInstance) -> Assignment {
    let servers = inst.servers();
    let mut remaining: Vec<u32> = inst.capacities().to_vec();
    let mut j = 0;
    let mut matches = Vec::with_capacity(inst.users().len());
    for &r in inst.users() {
        // servers skipped here are left of every later user or already full
        while j < servers.len() && (servers[j] < r || remaining[j] == 0) {
            j += 1;
        }
        if j < servers.len() {
            remaining[j] -= 1;
            matches.push(Some(j));
        } else {
            matches.push(None);
        }
    }
    Assignment::from_matches(Policy::Mtr, inst, matches)
}

/// Unidirectional Gale–Shapley: every user emits a rightward ray at unit
/// speed and the first server with spare capacity it reaches claims it.
///
/// A server is reached first by the nearest unmatched users on its left, so
/// a sweep that keeps unmatched users on a stack and lets each server pop up
/// to its capacity yields the same matching. Co-located users are pushed in
/// decreasing index order so the lower index wins a tie.
pub fn ugs(inst: &SpatialInstance) -> Assignment {
    let users = inst.users();
    let servers = inst.servers();
    let mut matches = vec![None; users.len()];
    let mut stack: Vec<usize> = Vec::new();
    let mut i = 0;
    for (j, (&s, &cap)) in servers.iter().zip(inst.capacities()).enumerate() {
        while i < users.len() && users[i] <= s {
            let start = i;
            while i < users.len() && users[i] == users[start] {
                i += 1;
            }
            stack.extend((start..i).rev());
        }
        for _ in 0..cap {
            match stack.pop() {
                Some(u) => matches[u] = Some(j),
                None => break,
            }
        }
    }
    Assignment::from_matches(Policy::Ugs, inst, matches)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(users: &[f64], servers: &[f64], c: u32) -> SpatialInstance {
        SpatialInstance::with_capacity(users.to_vec(), servers.to_vec(), c).unwrap()
    }

    #[test]
    fn mtr_examples() {
        let a = mtr(&inst(&[1.0, 2.0, 3.0], &[2.5, 4.0, 5.0], 1));
        assert_eq!(a.matches, vec![Some(0), Some(1), Some(2)]);
        assert_eq!(a.distances, vec![Some(1.5), Some(2.0), Some(2.0)]);
        assert!((a.total_cost - 5.5).abs() < 1e-12);

        let a = mtr(&inst(&[1.0, 1.2], &[1.5], 2));
        assert_eq!(a.matches, vec![Some(0), Some(0)]);
        assert!((a.total_cost - 0.8).abs() < 1e-12);

        // a server left of the user is never used
        let a = mtr(&inst(&[1.0, 2.0], &[1.5], 2));
        assert_eq!(a.matches, vec![Some(0), None]);

        let a = mtr(&inst(&[5.0], &[1.0], 1));
        assert_eq!(a.matches, vec![None]);
        assert_eq!(a.total_cost, 0.0);
    }

    #[test]
    fn ugs_examples() {
        let a = ugs(&inst(&[1.0, 2.0, 3.0], &[2.5, 4.0, 5.0], 1));
        assert_eq!(a.matches, vec![Some(2), Some(0), Some(1)]);
        assert_eq!(a.distances, vec![Some(4.0), Some(0.5), Some(1.0)]);
        assert!((a.total_cost - 5.5).abs() < 1e-12);

        let a = ugs(&inst(&[0.0, 0.1], &[0.2], 1));
        assert_eq!(a.matches, vec![None, Some(0)]);

        let one = inst(&[1.0], &[3.0], 1);
        assert_eq!(ugs(&one).matches, mtr(&one).matches);
    }

    #[test]
    fn colocated_ties_favour_lower_index() {
        let a = ugs(&inst(&[1.0, 1.0, 1.0], &[1.0, 2.0], 1));
        assert_eq!(a.matches, vec![Some(0), Some(1), None]);
        let a = mtr(&inst(&[1.0, 1.0, 1.0], &[1.0, 2.0], 1));
        assert_eq!(a.matches, vec![Some(0), Some(1), None]);
    }
}
