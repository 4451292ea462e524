use serde::Serialize;

use super::{check_rate, check_stable};
use crate::distributions::DistanceDistribution;
use crate::error::{invalid, Result};
use crate::numerics::root_in_unit_interval;

/// Renewal users with gap law `F_Y`, Poisson servers of rate `μ`, capacity `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrpsModel {
    pub inter_user: DistanceDistribution,
    pub mu: f64,
    pub c: u32,
}

/// Solved renewal-input bulk-service queue.
#[derive(Debug, Clone, Serialize)]
pub struct GrpsSolution {
    /// Root in `(0, 1)` of `r = F_Y*(μ − μ r^c)`.
    pub r0: f64,
    /// Normalization constant `C = λ r₀^c (1 − r₀)`.
    pub normalization: f64,
    /// `ω = 1 / F_Y*(μ)`.
    pub omega: f64,
    /// Probability of an empty waiting buffer at an arrival.
    pub p01: f64,
    /// `E[N_q]`
    pub mean_queue: f64,
    pub expected_distance: f64,
    /// The closed-form constant as printed in the source derivation, which
    /// fails the exponential reduction; kept for comparison only.
    pub printed_normalization: f64,
}

impl GrpsModel {
    pub fn new(inter_user: DistanceDistribution, mu: f64, c: u32) -> Result<Self> {
        check_rate("mu", mu)?;
        if c == 0 {
            return Err(invalid("capacity must be at least 1"));
        }
        let m = Self { inter_user, mu, c };
        check_stable(m.load(), c as f64)?;
        Ok(m)
    }

    pub fn lambda(&self) -> f64 {
        self.inter_user.rate()
    }

    pub fn load(&self) -> f64 {
        self.lambda() / self.mu
    }

    pub fn solve(&self) -> Result<GrpsSolution> {
        let (mu, c) = (self.mu, self.c as i32);
        let lambda = self.lambda();
        let fy = &self.inter_user;
        let r0 = root_in_unit_interval(|r| r - fy.lst(mu - mu * r.powi(c)), None, "renewal-input root")?;
        let rc = r0.powi(c);

        // The mean-queue identity E[N_q] = C / (μ (1 − r₀^c)(1 − r₀)) with this
        // constant reduces to the bulk-service result for exponential gaps.
        let normalization = lambda * rc * (1.0 - r0);
        let mean_queue = normalization / (mu * (1.0 - rc) * (1.0 - r0));
        let expected_distance = mean_queue / lambda + 1.0 / mu;

        let fy_mu = fy.lst(mu);
        let omega = 1.0 / fy_mu;
        let geo_omega: f64 = (0..c).map(|k| omega.powi(k)).sum();
        let geo_r: f64 = (0..c).map(|k| r0.powi(k)).sum();
        let bracket = geo_omega + 1.0 / (1.0 - r0)
            - omega * (r0 - fy_mu) / (rc * (1.0 - r0 * omega)) * (geo_r - r0.powi(c - 1) * geo_omega);
        let printed_normalization = lambda / bracket;

        let p01 = normalization / mu * ((r0.powi(c - 1) - rc) / (1.0 - rc) + 1.0 / r0 - 1.0);
        Ok(GrpsSolution { r0, normalization, omega, p01, mean_queue, expected_distance, printed_normalization })
    }
}

pub fn grps_expected_distance(m: &GrpsModel) -> Result<f64> {
    Ok(m.solve()?.expected_distance)
}
