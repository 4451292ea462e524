use num_complex::Complex64;
use serde::Serialize;

use super::{check_rate, check_stable};
use crate::distributions::{exceptional, DistanceDistribution, ExceptionalDistribution};
use crate::error::{invalid, Error, Result};
use crate::numerics::{solve_real_linear, unit_disk_roots, Polynomial};

/// Poisson users of rate `λ`, renewal servers with gap law `F_X`, capacity `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrgsModel {
    pub lambda: f64,
    pub inter_server: DistanceDistribution,
    pub c: u32,
    /// Use the exceptional first-gap law `F_Z`; when false the first gap of a
    /// busy period is treated as ordinary (`F_Z = F_X`).
    pub exceptional_first: bool,
}

/// Solved exceptional-service accessible-batch queue.
#[derive(Debug, Clone, Serialize)]
pub struct PrgsSolution {
    pub lambda: f64,
    pub c: u32,
    /// `ρ = λ α_X`
    pub rho: f64,
    /// `ρ_Z = λ α_Z`
    pub rho_z: f64,
    /// Roots of `z^c − F_X*(λ(1 − z))` in the closed unit disk, `1` last.
    pub roots: Vec<Complex64>,
    /// `a_1, …, a_c`
    pub coefficients: Vec<f64>,
    pub condition: f64,
    /// `N̄`
    pub mean_in_system: f64,
    pub expected_distance: f64,
    #[serde(skip)]
    servers: DistanceDistribution,
    #[serde(skip)]
    first: ExceptionalDistribution,
}

impl PrgsModel {
    pub fn new(lambda: f64, inter_server: DistanceDistribution, c: u32) -> Result<Self> {
        check_rate("lambda", lambda)?;
        if c == 0 {
            return Err(invalid("capacity must be at least 1"));
        }
        let m = Self { lambda, inter_server, c, exceptional_first: true };
        check_stable(m.load(), c as f64)?;
        Ok(m)
    }

    /// Same model with `F_Z = F_X`.
    pub fn without_exceptional_first(mut self) -> Self {
        self.exceptional_first = false;
        self
    }

    pub fn load(&self) -> f64 {
        self.lambda * self.inter_server.mean()
    }

    pub fn exceptional(&self) -> Result<ExceptionalDistribution> {
        if self.exceptional_first {
            exceptional(&self.inter_server, self.lambda)
        } else {
            Ok(ExceptionalDistribution::identical(&self.inter_server))
        }
    }
}

/// `z^c · den(λ(1 − z)) − num(λ(1 − z)) · extra(z)` for a rational transform,
/// whose roots in the disk are those of `z^c − F*(λ(1 − z)) · extra(z)`.
pub(crate) fn rational_characteristic(
    d: &DistanceDistribution,
    lambda: f64,
    c: u32,
    extra: &Polynomial,
) -> Option<Polynomial> {
    let (num, den) = d.rational_lst()?;
    let num = num.compose_linear(lambda, -lambda);
    let den = den.compose_linear(lambda, -lambda);
    Some(&(&Polynomial::monomial(c as usize) * &den) - &(&num * extra))
}

/// Computes the roots and the constants `a_k` from the `c − 1` root
/// conditions and the normalization `Σ a_k (c(1 + ρ_Z) − ρk) = λ(c − ρ)`.
pub fn prgs_solve(m: &PrgsModel) -> Result<PrgsSolution> {
    let (lambda, c) = (m.lambda, m.c);
    let fx = &m.inter_server;
    let fz = m.exceptional()?;
    let rho = m.load();
    let rho_z = lambda * fz.mean();

    let theta = |z: Complex64| lambda * (1.0 - z);
    let a = |z: Complex64| fx.lst_complex(theta(z));
    let rational = rational_characteristic(fx, lambda, c, &Polynomial::constant(1.0));
    let roots = unit_disk_roots(c as usize, &a, rational.as_ref())?.roots;

    let cf = c as f64;
    let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(c as usize);
    let mut rhs = Vec::with_capacity(c as usize);
    for &xi in &roots[..c as usize - 1] {
        let u = fz.lst_complex(theta(xi)) / fx.lst_complex(theta(xi));
        rows.push((1..=c).map(|k| u - xi.powi(k as i32 - c as i32 - 1)).collect());
        rhs.push(Complex64::new(0.0, 0.0));
    }
    rows.push((1..=c).map(|k| Complex64::new(cf * (1.0 + rho_z) - rho * k as f64, 0.0)).collect());
    rhs.push(Complex64::new(lambda * (cf - rho), 0.0));
    let sol = solve_real_linear(&rows, &rhs)?;

    let m2x = fx.second_moment();
    let m2z = fz.second_moment();
    let l2 = lambda * lambda;
    let sum: f64 = sol
        .x
        .iter()
        .enumerate()
        .map(|(i, ak)| {
            let k = (i + 1) as f64;
            ak * (l2 * m2z * cf * (cf - rho)
                + l2 * m2x * cf * (1.0 + rho_z - k)
                + (cf * k * (cf - k) + k * (k - 1.0) * rho - cf * (cf - 1.0)) * rho
                + 2.0 * cf * cf * rho_z
                - cf * (cf + 1.0) * rho_z * rho)
        })
        .sum();
    let mean_in_system = sum / (2.0 * lambda * (cf - rho) * (cf - rho));
    if !(mean_in_system.is_finite() && mean_in_system > 0.0) {
        return Err(Error::Numeric(format!("mean number in system {mean_in_system} is not positive")));
    }
    Ok(PrgsSolution {
        lambda,
        c,
        rho,
        rho_z,
        roots,
        coefficients: sol.x,
        condition: sol.condition,
        mean_in_system,
        expected_distance: mean_in_system / lambda,
        servers: fx.clone(),
        first: fz,
    })
}

/// `E[D] = N̄ / λ`
pub fn prgs_expected_distance(s: &PrgsSolution) -> Result<f64> {
    Ok(s.expected_distance)
}

/// Generating function of the number of users in the system,
/// `N(z) = Σ a_k [z^c − z^k + z(1 − z^c) F_Z*(θ) − (1 − z^k) F_X*(θ)] / (θ (z^c − F_X*(θ)))`
/// with `θ = λ(1 − z)`.
pub fn prgs_queue_pgf(s: &PrgsSolution, z: Complex64) -> Result<Complex64> {
    if (z - 1.0).norm() < 1e-12 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    let theta = s.lambda * (1.0 - z);
    let fx = s.servers.lst_complex(theta);
    let fz = s.first.lst_complex(theta);
    let zc = z.powu(s.c);
    let den = theta * (zc - fx);
    if den.norm() < 1e-13 {
        return Err(Error::Numeric(format!("queue transform is singular at {z}")));
    }
    let num: Complex64 = s
        .coefficients
        .iter()
        .enumerate()
        .map(|(i, ak)| {
            let zk = z.powu(i as u32 + 1);
            *ak * (zc - zk + z * (1.0 - zc) * fz - (1.0 - zk) * fx)
        })
        .sum();
    Ok(num / den)
}

impl PrgsSolution {
    /// `p(0) = Σ a_k / λ`
    pub fn empty_probability(&self) -> f64 {
        self.coefficients.iter().sum::<f64>() / self.lambda
    }

    pub fn exceptional(&self) -> &ExceptionalDistribution {
        &self.first
    }
}
