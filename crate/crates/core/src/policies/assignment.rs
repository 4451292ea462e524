use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SpatialInstance;
use crate::error::{invalid, Error, Result};

/// Allocation policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Policy {
    /// Move to right: each user in turn takes the nearest free server on its right.
    Mtr,
    /// Unidirectional Gale–Shapley: simultaneous rightward rays.
    Ugs,
    /// Bidirectional stable matching by mutual nearest pairs.
    #[serde(rename = "gs")]
    GaleShapley,
    /// Minimum total distance.
    Optimal,
    /// Exhaustive minimum, for tiny instances.
    #[serde(rename = "brute")]
    BruteForce,
}

impl Policy {
    pub const ALL: [Policy; 4] = [Policy::Mtr, Policy::Ugs, Policy::GaleShapley, Policy::Optimal];

    pub fn name(self) -> &'static str {
        match self {
            Policy::Mtr => "mtr",
            Policy::Ugs => "ugs",
            Policy::GaleShapley => "gs",
            Policy::Optimal => "optimal",
            Policy::BruteForce => "brute",
        }
    }

    /// Servers are always at or to the right of their users.
    pub fn is_unidirectional(self) -> bool {
        matches!(self, Policy::Mtr | Policy::Ugs)
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "mtr" => Ok(Policy::Mtr),
            "ugs" => Ok(Policy::Ugs),
            "gs" | "gale-shapley" | "galeshapley" => Ok(Policy::GaleShapley),
            "optimal" | "opt" | "dp" => Ok(Policy::Optimal),
            "brute" | "brute-force" => Ok(Policy::BruteForce),
            other => Err(invalid(format!("unknown policy {other:?}"))),
        }
    }
}

/// A user→server mapping produced by a policy.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub policy: Policy,
    /// Server index per user, `None` if unmatched.
    pub matches: Vec<Option<usize>>,
    /// `|r_i − s_{η(i)}|` per user, `None` if unmatched.
    pub distances: Vec<Option<f64>>,
    pub total_cost: f64,
}

impl Assignment {
    pub(crate) fn from_matches(policy: Policy, inst: &SpatialInstance, matches: Vec<Option<usize>>) -> Self {
        let distances: Vec<Option<f64>> =
            matches.iter().zip(inst.users()).map(|(m, r)| m.map(|j| (inst.servers()[j] - r).abs())).collect();
        let total_cost = distances.iter().flatten().fold(0.0, |acc, d| acc + d);
        Self { policy, matches, distances, total_cost }
    }

    pub fn matched_count(&self) -> usize {
        self.matches.iter().filter(|m| m.is_some()).count()
    }

    /// Indices of matched users, increasing.
    pub fn matched_users(&self) -> Vec<usize> {
        self.matches.iter().enumerate().filter_map(|(i, m)| m.map(|_| i)).collect()
    }

    pub fn matched_distances(&self) -> impl Iterator<Item = f64> + '_ {
        self.distances.iter().flatten().copied()
    }

    pub fn mean_distance(&self) -> f64 {
        let n = self.matched_count();
        if n == 0 {
            0.0
        } else {
            self.total_cost / n as f64
        }
    }

    /// Population variance of the matched distances (zero when none).
    pub fn distance_variance(&self) -> f64 {
        let n = self.matched_count();
        if n == 0 {
            return 0.0;
        }
        let m = self.mean_distance();
        self.matched_distances().map(|d| (d - m) * (d - m)).sum::<f64>() / n as f64
    }

    /// Number of users assigned to each server.
    pub fn server_loads(&self, servers: usize) -> Vec<u32> {
        let mut loads = vec![0; servers];
        for j in self.matches.iter().flatten() {
            loads[*j] += 1;
        }
        loads
    }

    /// Checks capacities and, for unidirectional policies, that no user is
    /// served from its left.
    pub fn validate(&self, inst: &SpatialInstance) -> Result<()> {
        if self.matches.len() != inst.users().len() {
            return Err(invalid("assignment size differs from user count"));
        }
        for (j, (&load, &cap)) in self.server_loads(inst.servers().len()).iter().zip(inst.capacities()).enumerate() {
            if load > cap {
                return Err(invalid(format!("server {j} has {load} users but capacity {cap}")));
            }
        }
        if self.policy.is_unidirectional() {
            for (i, m) in self.matches.iter().enumerate() {
                if let Some(j) = m {
                    if inst.servers()[*j] < inst.users()[i] {
                        return Err(Error::NotUnidirectional { user: i });
                    }
                }
            }
        }
        Ok(())
    }
}
