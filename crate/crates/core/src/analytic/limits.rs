use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::check_stable;
use crate::distributions::DistanceDistribution;
use crate::error::{invalid, Error, Result};

/// Which side carries the renewal (non-Poisson) process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Renewal users, Poisson servers.
    Grps,
    /// Poisson users, renewal servers.
    Prgs,
}

impl FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "grps" => Ok(Side::Grps),
            "prgs" => Ok(Side::Prgs),
            other => Err(invalid(format!("unknown side {other:?}, expected grps or prgs"))),
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Grps => "grps",
            Side::Prgs => "prgs",
        })
    }
}

/// Expected distance as capacity grows without bound, given the server gap
/// law: every user walks to the next server. Poisson servers give `1/μ`;
/// renewal servers give the mean residual gap `(μ/2)(σ_X² + 1/μ²)`.
pub fn uncapacitated_expected_distance(side: Side, servers: &DistanceDistribution) -> f64 {
    match side {
        Side::Grps => servers.mean(),
        Side::Prgs => servers.second_moment() / (2.0 * servers.mean()),
    }
}

/// Heavy-traffic estimate for unit capacity and general laws on both sides,
/// `α_X + (σ_X² + σ_Y²) / (2 α_Y (1 − ρ))`.
pub fn heavy_traffic_estimate(users: &DistanceDistribution, servers: &DistanceDistribution) -> Result<f64> {
    let (ax, ay) = (servers.mean(), users.mean());
    let rho = ax / ay;
    check_stable(rho, 1.0)?;
    Ok(ax + (servers.variance() + users.variance()) / (2.0 * ay * (1.0 - rho)))
}
