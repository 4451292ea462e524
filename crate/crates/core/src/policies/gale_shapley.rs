use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use super::{Assignment, Policy, SpatialInstance};

const NONE: usize = usize::MAX;

/// Points sharing one position. After the zero-distance matches inside a
/// site, it holds only users or only servers.
struct Site {
    pos: f64,
    users: VecDeque<usize>,
    /// `(server index, spare capacity)`, increasing index.
    servers: VecDeque<(usize, u32)>,
    prev: usize,
    next: usize,
    version: u64,
}

impl Site {
    fn is_empty(&self) -> bool {
        self.users.is_empty() && self.servers.is_empty()
    }
}

/// `(distance bits, lowest user, lowest server, left site, right site, left version, right version)`;
/// bit patterns of nonnegative floats order like the floats.
type Candidate = Reverse<(u64, usize, usize, usize, usize, u64, u64)>;

/// Bidirectional Gale–Shapley with capacities.
///
/// Servers are split into unit slots and mutually nearest user/slot pairs are
/// matched until no user can be. This equals taking pairs in increasing
/// distance (ties by lower user, then lower server index), and on a line the
/// closest remaining pair is always between neighbouring occupied positions,
/// so a heap over neighbouring sites suffices.
pub fn gale_shapley(inst: &SpatialInstance) -> Assignment {
    let mut matches = vec![None; inst.users().len()];
    let mut sites = build_sites(inst);

    for site in sites.iter_mut() {
        while let (Some(&u), Some(front)) = (site.users.front(), site.servers.front_mut()) {
            matches[u] = Some(front.0);
            site.users.pop_front();
            front.1 -= 1;
            if front.1 == 0 {
                site.servers.pop_front();
            }
        }
    }

    // link the non-empty sites
    let live: Vec<usize> = (0..sites.len()).filter(|&k| !sites[k].is_empty()).collect();
    for w in live.windows(2) {
        sites[w[0]].next = w[1];
        sites[w[1]].prev = w[0];
    }

    let mut heap: BinaryHeap<Candidate> = BinaryHeap::new();
    for w in live.windows(2) {
        push_pair(&sites, w[0], w[1], &mut heap);
    }

    while let Some(Reverse((_, _, _, a, b, va, vb))) = heap.pop() {
        if sites[a].next != b || sites[a].version != va || sites[b].version != vb {
            continue;
        }
        let (u_site, s_site) = if sites[a].users.is_empty() { (b, a) } else { (a, b) };
        // a current candidate always joins a user site and a server site
        let (Some(u), Some(front)) = (sites[u_site].users.pop_front(), sites[s_site].servers.front_mut()) else {
            continue;
        };
        matches[u] = Some(front.0);
        front.1 -= 1;
        if front.1 == 0 {
            sites[s_site].servers.pop_front();
        }
        sites[a].version += 1;
        sites[b].version += 1;

        let mut touched = Vec::with_capacity(2);
        for k in [a, b] {
            if sites[k].is_empty() {
                let (p, n) = (sites[k].prev, sites[k].next);
                if p != NONE {
                    sites[p].next = n;
                }
                if n != NONE {
                    sites[n].prev = p;
                }
                sites[k].next = NONE;
                sites[k].prev = NONE;
                // a dead site must fail the adjacency check
                sites[k].version += 1;
                if p != NONE && n != NONE {
                    push_pair(&sites, p, n, &mut heap);
                }
            } else {
                touched.push(k);
            }
        }
        for k in touched {
            let (p, n) = (sites[k].prev, sites[k].next);
            if p != NONE {
                push_pair(&sites, p, k, &mut heap);
            }
            if n != NONE {
                push_pair(&sites, k, n, &mut heap);
            }
        }
    }
    Assignment::from_matches(Policy::GaleShapley, inst, matches)
}

fn build_sites(inst: &SpatialInstance) -> Vec<Site> {
    let users = inst.users();
    let servers = inst.servers();
    let caps = inst.capacities();
    let mut sites: Vec<Site> = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < users.len() || j < servers.len() {
        let pos = match (users.get(i), servers.get(j)) {
            (Some(&r), Some(&s)) => r.min(s),
            (Some(&r), None) => r,
            (None, Some(&s)) => s,
            (None, None) => break,
        };
        let mut site =
            Site { pos, users: VecDeque::new(), servers: VecDeque::new(), prev: NONE, next: NONE, version: 0 };
        while i < users.len() && users[i] == pos {
            site.users.push_back(i);
            i += 1;
        }
        while j < servers.len() && servers[j] == pos {
            site.servers.push_back((j, caps[j]));
            j += 1;
        }
        sites.push(site);
    }
    sites
}

fn push_pair(sites: &[Site], a: usize, b: usize, heap: &mut BinaryHeap<Candidate>) {
    let (sa, sb) = (&sites[a], &sites[b]);
    let (u, s) = match (sa.users.front(), sb.servers.front(), sb.users.front(), sa.servers.front()) {
        (Some(&u), Some(&(s, _)), _, _) => (u, s),
        (_, _, Some(&u), Some(&(s, _))) => (u, s),
        _ => return,
    };
    let d = (sb.pos - sa.pos).abs();
    heap.push(Reverse((d.to_bits(), u, s, a, b, sa.version, sb.version)));
}
