use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use super::{
    heavy_traffic_estimate, prgs_solve, uncapacitated_expected_distance, BulkMM1Model, GrpsModel, GrpsSolution,
    HetCapModel, HetCapSolution, PrgsModel, PrgsSolution, Side,
};
use crate::distributions::{CapacitySpec, DistanceDistribution};
use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Bulk,
    Grps,
    Prgs,
    Hetcap,
    Heavy,
    Limit,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ModelKind::Bulk => "bulk",
            ModelKind::Grps => "grps",
            ModelKind::Prgs => "prgs",
            ModelKind::Hetcap => "hetcap",
            ModelKind::Heavy => "heavy",
            ModelKind::Limit => "limit",
        };
        f.write_str(s)
    }
}

/// Solver internals of an analytic result.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum AnalyticDetail {
    Bulk { r0: f64 },
    Grps(GrpsSolution),
    Prgs(PrgsSolution),
    Hetcap(HetCapSolution),
    Heavy { rho: f64 },
    Limit { side: Side },
}

/// An expected request distance with the model and parameters behind it.
#[derive(Debug, Clone, Serialize)]
pub struct AnalyticResult {
    pub model: ModelKind,
    /// User density.
    pub lambda: f64,
    /// Server density.
    pub mu: f64,
    pub capacity: String,
    pub users: String,
    pub servers: String,
    pub expected_distance: f64,
    pub detail: AnalyticDetail,
}

impl AnalyticResult {
    pub const CSV_HEADER: [&'static str; 8] =
        ["model", "lambda", "mu", "capacity", "users", "servers", "summary", "expected_distance"];

    pub fn bulk(m: &BulkMM1Model) -> Result<Self> {
        let r0 = m.root()?;
        Ok(Self {
            model: ModelKind::Bulk,
            lambda: m.lambda,
            mu: m.mu,
            capacity: m.c.to_string(),
            users: format!("exp:{}", m.lambda),
            servers: format!("exp:{}", m.mu),
            expected_distance: r0 / (m.lambda * (1.0 - r0)),
            detail: AnalyticDetail::Bulk { r0 },
        })
    }

    pub fn grps(m: &GrpsModel) -> Result<Self> {
        let s = m.solve()?;
        Ok(Self {
            model: ModelKind::Grps,
            lambda: m.lambda(),
            mu: m.mu,
            capacity: m.c.to_string(),
            users: m.inter_user.to_string(),
            servers: format!("exp:{}", m.mu),
            expected_distance: s.expected_distance,
            detail: AnalyticDetail::Grps(s),
        })
    }

    pub fn prgs(m: &PrgsModel) -> Result<Self> {
        let s = prgs_solve(m)?;
        Ok(Self {
            model: ModelKind::Prgs,
            lambda: m.lambda,
            mu: m.inter_server.rate(),
            capacity: m.c.to_string(),
            users: format!("exp:{}", m.lambda),
            servers: m.inter_server.to_string(),
            expected_distance: s.expected_distance,
            detail: AnalyticDetail::Prgs(s),
        })
    }

    pub fn hetcap(m: &HetCapModel) -> Result<Self> {
        let s = m.solve()?;
        Ok(Self {
            model: ModelKind::Hetcap,
            lambda: m.lambda,
            mu: m.inter_server.rate(),
            capacity: CapacitySpec::Pmf(m.capacity_pmf.clone()).to_string(),
            users: format!("exp:{}", m.lambda),
            servers: m.inter_server.to_string(),
            expected_distance: s.expected_distance,
            detail: AnalyticDetail::Hetcap(s),
        })
    }

    pub fn heavy(users: &DistanceDistribution, servers: &DistanceDistribution) -> Result<Self> {
        let v = heavy_traffic_estimate(users, servers)?;
        Ok(Self {
            model: ModelKind::Heavy,
            lambda: users.rate(),
            mu: servers.rate(),
            capacity: "1".into(),
            users: users.to_string(),
            servers: servers.to_string(),
            expected_distance: v,
            detail: AnalyticDetail::Heavy { rho: servers.mean() / users.mean() },
        })
    }

    pub fn limit(side: Side, servers: &DistanceDistribution) -> Self {
        Self {
            model: ModelKind::Limit,
            lambda: f64::NAN,
            mu: servers.rate(),
            capacity: "inf".into(),
            users: String::new(),
            servers: servers.to_string(),
            expected_distance: uncapacitated_expected_distance(side, servers),
            detail: AnalyticDetail::Limit { side },
        }
    }

    /// Short description of the solver state for CSV output.
    pub fn summary(&self) -> String {
        let roots = |r: &[Complex64]| {
            let inner = r.len().saturating_sub(1);
            let min = r[..inner].iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
            if inner == 0 {
                "roots=1".to_string()
            } else {
                format!("roots={} min|xi|={min:.6}", r.len())
            }
        };
        match &self.detail {
            AnalyticDetail::Bulk { r0 } => format!("r0={r0:.12}"),
            AnalyticDetail::Grps(s) => format!("r0={:.12}", s.r0),
            AnalyticDetail::Prgs(s) => format!("{} rho_z={:.6}", roots(&s.roots), s.rho_z),
            AnalyticDetail::Hetcap(s) => format!("{} Hbar={:.6}", roots(&s.roots), s.mean_waiting),
            AnalyticDetail::Heavy { rho } => format!("rho={rho:.6}"),
            AnalyticDetail::Limit { side } => format!("side={side}"),
        }
    }

    pub fn csv_row(&self) -> Vec<String> {
        vec![
            self.model.to_string(),
            self.lambda.to_string(),
            self.mu.to_string(),
            self.capacity.clone(),
            self.users.clone(),
            self.servers.clone(),
            self.summary(),
            self.expected_distance.to_string(),
        ]
    }
}

/// Picks the model that matches the user and server laws and evaluates it:
/// Poisson on both sides → bulk service; Poisson users → exceptional-service
/// model (or the random-capacity chain for a capacity pmf); Poisson servers →
/// renewal-input model; otherwise, at unit capacity, the heavy-traffic
/// estimate.
pub fn predict(
    users: &DistanceDistribution,
    servers: &DistanceDistribution,
    capacity: &CapacitySpec,
) -> Result<AnalyticResult> {
    capacity.validate()?;
    let lambda = users.rate();
    match (users.is_exponential(), servers.is_exponential(), capacity) {
        (true, true, CapacitySpec::Fixed(c)) => AnalyticResult::bulk(&BulkMM1Model::new(lambda, servers.rate(), *c)?),
        (true, _, CapacitySpec::Pmf(p)) => {
            AnalyticResult::hetcap(&HetCapModel::new(lambda, servers.clone(), p.clone())?)
        }
        (true, false, CapacitySpec::Fixed(c)) => AnalyticResult::prgs(&PrgsModel::new(lambda, servers.clone(), *c)?),
        (false, true, CapacitySpec::Fixed(c)) => {
            AnalyticResult::grps(&GrpsModel::new(users.clone(), servers.rate(), *c)?)
        }
        (false, _, CapacitySpec::Fixed(1)) => AnalyticResult::heavy(users, servers),
        _ => Err(invalid(format!("no analytic model for users {users}, servers {servers}, capacity {capacity}"))),
    }
}
