use super::{Assignment, SpatialInstance};
use crate::error::{Error, Result};

/// The piecewise-constant count `N_x` of allocations whose segment
/// `[r_i, s_{η(i)})` covers `x`, for a unidirectional assignment.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadProfile {
    /// Positions where `N_x` changes, increasing.
    pub breakpoints: Vec<f64>,
    /// `values[k]` is `N_x` on `[breakpoints[k], breakpoints[k+1])`; the last
    /// entry is always 0.
    pub values: Vec<u64>,
    /// Maximal intervals with `N_x > 0`.
    pub busy_cycles: Vec<(f64, f64)>,
}

impl LoadProfile {
    pub fn is_empty(&self) -> bool {
        self.breakpoints.is_empty()
    }

    /// `N_x` at `x`.
    pub fn value_at(&self, x: f64) -> u64 {
        match self.breakpoints.partition_point(|&b| b <= x) {
            0 => 0,
            k => self.values[k - 1],
        }
    }

    /// `∫ N_x dx` over `[a, b]`, assuming `a` and `b` are breakpoints.
    pub fn integral(&self, a: f64, b: f64) -> f64 {
        let mut total = 0.0;
        for k in 0..self.breakpoints.len().saturating_sub(1) {
            let (lo, hi) = (self.breakpoints[k], self.breakpoints[k + 1]);
            if lo >= a && hi <= b {
                total += self.values[k] as f64 * (hi - lo);
            }
        }
        total
    }
}

/// Builds the load profile of a unidirectional assignment. Zero-length
/// allocations contribute nothing.
pub fn load_profile(inst: &SpatialInstance, a: &Assignment) -> Result<LoadProfile> {
    let mut events: Vec<(f64, i64)> = Vec::with_capacity(2 * a.matches.len());
    for (i, m) in a.matches.iter().enumerate() {
        let Some(j) = m else { continue };
        let (r, s) = (inst.users()[i], inst.servers()[*j]);
        if s < r {
            return Err(Error::NotUnidirectional { user: i });
        }
        if s > r {
            events.push((r, 1));
            events.push((s, -1));
        }
    }
    events.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut breakpoints = Vec::new();
    let mut values: Vec<u64> = Vec::new();
    let mut busy_cycles = Vec::new();
    let mut level: i64 = 0;
    let mut cycle_start = 0.0;
    let mut k = 0;
    while k < events.len() {
        let x = events[k].0;
        let before = level;
        while k < events.len() && events[k].0 == x {
            level += events[k].1;
            k += 1;
        }
        if level == before {
            continue;
        }
        if before == 0 {
            cycle_start = x;
        }
        if level == 0 {
            busy_cycles.push((cycle_start, x));
        }
        breakpoints.push(x);
        values.push(level as u64);
    }
    Ok(LoadProfile { breakpoints, values, busy_cycles })
}
