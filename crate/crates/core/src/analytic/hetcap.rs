use num_complex::Complex64;
use serde::Serialize;

use super::prgs::rational_characteristic;
use super::{check_rate, check_stable};
use crate::distributions::{CapacitySpec, DistanceDistribution};
use crate::error::{Error, Result};
use crate::numerics::{solve_real_linear, unit_disk_roots, Polynomial};

/// Poisson users of rate `λ`, renewal servers with gap law `F_X`, and i.i.d.
/// server capacities with pmf `p_1, …, p_c`.
#[derive(Debug, Clone, PartialEq)]
pub struct HetCapModel {
    pub lambda: f64,
    pub inter_server: DistanceDistribution,
    /// `capacity_pmf[j − 1] = p_j`
    pub capacity_pmf: Vec<f64>,
}

/// Solved embedded chain of the number of users waiting just after a server.
#[derive(Debug, Clone, Serialize)]
pub struct HetCapSolution {
    pub mean_capacity: f64,
    pub rho: f64,
    /// Roots of `z^c − K(z) Σ_j p_j z^{c−j}` in the closed unit disk, `1` last.
    pub roots: Vec<Complex64>,
    /// `π_0, …, π_{c−1}`
    pub pi: Vec<f64>,
    pub condition: f64,
    /// `H̄`, mean number left waiting just after a server.
    pub mean_waiting: f64,
    pub expected_distance: f64,
}

impl HetCapModel {
    pub fn new(lambda: f64, inter_server: DistanceDistribution, capacity_pmf: Vec<f64>) -> Result<Self> {
        check_rate("lambda", lambda)?;
        CapacitySpec::Pmf(capacity_pmf.clone()).validate()?;
        let m = Self { lambda, inter_server, capacity_pmf };
        check_stable(m.load(), m.mean_capacity())?;
        Ok(m)
    }

    pub fn from_spec(lambda: f64, inter_server: DistanceDistribution, capacity: &CapacitySpec) -> Result<Self> {
        Self::new(lambda, inter_server, capacity.pmf())
    }

    pub fn load(&self) -> f64 {
        self.lambda * self.inter_server.mean()
    }

    /// `c̄ = Σ j p_j`
    pub fn mean_capacity(&self) -> f64 {
        self.capacity_pmf.iter().enumerate().map(|(j, p)| (j + 1) as f64 * p).sum()
    }

    /// Solves the chain `H' = max(H + V − C, 0)`, `V` the users in one gap.
    ///
    /// With `W = H + V`, the transform of `H` is `R(z)/D(z)` where
    /// `D(z) = z^c − K(z) Σ_j p_j z^{c−j}` and
    /// `R(z) = Σ_{w<c} P(W = w) Σ_{j>w} p_j (z^c − z^{c−j+w})`, and
    /// `P(W = w) = Σ_{m≤w} π_m k_{w−m}` for `w < c` involves only
    /// `π_0, …, π_{c−1}`. These follow from `R(ξ) = 0` at the `c − 1` inner
    /// roots of `D` and from `R'(1) = D'(1) = c̄ − ρ`.
    pub fn solve(&self) -> Result<HetCapSolution> {
        let lambda = self.lambda;
        let fx = &self.inter_server;
        let p = &self.capacity_pmf;
        let c = p.len();
        let cf = c as f64;
        let rho = self.load();
        let cbar = self.mean_capacity();
        // p_j for j = 1..c
        let pj = |j: usize| p[j - 1];

        let mut k = fx.arrival_pmf(lambda)?;
        k.resize(k.len().max(c), 0.0);

        // S(z) = Σ_j p_j z^{c−j}
        let mut s_coeffs = vec![0.0; c];
        for j in 1..=c {
            s_coeffs[c - j] = pj(j);
        }
        let s_poly = Polynomial::new(s_coeffs);
        let a = |z: Complex64| fx.lst_complex(lambda * (1.0 - z)) * s_poly.eval(z);
        let rational = rational_characteristic(fx, lambda, c as u32, &s_poly);
        let roots = unit_disk_roots(c, &a, rational.as_ref())?.roots;

        // g_w(z) = Σ_{j>w} p_j (z^c − z^{c−j+w})
        let g = |w: usize, z: Complex64| -> Complex64 {
            let zc = z.powu(c as u32);
            (w + 1..=c).map(|j| pj(j) * (zc - z.powu((c - j + w) as u32))).sum()
        };
        // g_w'(1) and g_w''(1)
        let g1 = |w: usize| -> f64 { (w + 1..=c).map(|j| pj(j) * (j - w) as f64).sum() };
        let g2 = |w: usize| -> f64 {
            (w + 1..=c)
                .map(|j| {
                    let e = (c - j + w) as f64;
                    pj(j) * (cf * (cf - 1.0) - e * (e - 1.0))
                })
                .sum()
        };

        // coefficient of π_m in a functional L applied to R: Σ_{w=m}^{c−1} k_{w−m} L(g_w)
        let mut rows: Vec<Vec<Complex64>> = Vec::with_capacity(c);
        let mut rhs = Vec::with_capacity(c);
        for &xi in &roots[..c - 1] {
            let gw: Vec<Complex64> = (0..c).map(|w| g(w, xi)).collect();
            rows.push((0..c).map(|m| (m..c).map(|w| k[w - m] * gw[w]).sum()).collect());
            rhs.push(Complex64::new(0.0, 0.0));
        }
        let g1w: Vec<f64> = (0..c).map(g1).collect();
        rows.push((0..c).map(|m| Complex64::new((m..c).map(|w| k[w - m] * g1w[w]).sum(), 0.0)).collect());
        rhs.push(Complex64::new(cbar - rho, 0.0));
        let sol = solve_real_linear(&rows, &rhs)?;
        let pi = sol.x;
        if let Some(bad) = pi.iter().find(|v| **v < -1e-10 || **v > 1.0 + 1e-10) {
            return Err(Error::Numeric(format!("boundary probability {bad} outside [0, 1]")));
        }

        let w_probs: Vec<f64> = (0..c).map(|w| (0..=w).map(|m| pi[m] * k[w - m]).sum()).collect();
        let r1: f64 = (0..c).map(|w| w_probs[w] * g1(w)).sum();
        let r2: f64 = (0..c).map(|w| w_probs[w] * g2(w)).sum();
        let d1 = cbar - rho;
        let k1 = rho;
        let k2 = lambda * lambda * fx.second_moment();
        let s1: f64 = (1..=c).map(|j| pj(j) * (c - j) as f64).sum();
        let s2: f64 = (1..=c).map(|j| pj(j) * ((c - j) as f64) * ((c - j) as f64 - 1.0)).sum();
        let d2 = cf * (cf - 1.0) - (k2 + 2.0 * k1 * s1 + s2);
        let mean_waiting = (r2 * d1 - r1 * d2) / (2.0 * d1 * d1);
        if !(mean_waiting.is_finite() && mean_waiting > -1e-9) {
            return Err(Error::Numeric(format!("mean waiting count {mean_waiting} is negative")));
        }
        let mean_waiting = mean_waiting.max(0.0);
        // waiting users each add one inter-arrival of distance on average, and
        // every user travels the residual gap to the next server
        let expected_distance = mean_waiting / lambda + fx.second_moment() / (2.0 * fx.mean());
        Ok(HetCapSolution {
            mean_capacity: cbar,
            rho,
            roots,
            pi,
            condition: sol.condition,
            mean_waiting,
            expected_distance,
        })
    }
}

pub fn hetcap_expected_distance(m: &HetCapModel) -> Result<f64> {
    Ok(m.solve()?.expected_distance)
}

impl HetCapSolution {
    pub fn capacity_max(&self) -> usize {
        self.pi.len()
    }
}
