use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{run, SimConfig};
use crate::analytic::{heavy_traffic_estimate, predict};
use crate::distributions::{h2_from_cv, CapacitySpec, DistanceDistribution};
use crate::error::{invalid, Error, Result};

/// Parameter varied by a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepAxis {
    /// `ρ`; the user law is rescaled.
    Load,
    /// Fixed capacity `c` at the template's load.
    Capacity,
    /// Capacity uniform on `{1, …, 2c}` at the template's load.
    UniformCapacity,
    /// H2 servers with this squared coefficient of variation, same mean.
    ServerCv2,
    /// H2 users with this squared coefficient of variation, same mean.
    UserCv2,
}

impl SweepAxis {
    pub fn name(self) -> &'static str {
        match self {
            SweepAxis::Load => "load",
            SweepAxis::Capacity => "capacity",
            SweepAxis::UniformCapacity => "uniform-capacity",
            SweepAxis::ServerCv2 => "server-cv2",
            SweepAxis::UserCv2 => "user-cv2",
        }
    }

    /// The template with this axis set to `value`.
    pub fn apply(self, template: &SimConfig, value: f64) -> Result<SimConfig> {
        let mut cfg = template.clone();
        let as_capacity = || -> Result<u32> {
            if value >= 1.0 && value.fract() == 0.0 && value <= u32::MAX as f64 {
                Ok(value as u32)
            } else {
                Err(invalid(format!("capacity {value} must be a positive integer")))
            }
        };
        let cv_law = |base: &DistanceDistribution| -> Result<DistanceDistribution> {
            if value == 1.0 {
                DistanceDistribution::exponential(base.rate())
            } else {
                h2_from_cv(value, base.mean())
            }
        };
        match self {
            SweepAxis::Load => {
                if !(value > 0.0 && value < 1.0) {
                    return Err(invalid(format!("load {value} must lie in (0, 1)")));
                }
                let lambda = value * cfg.capacity.mean() / cfg.servers.mean();
                cfg.users = cfg.users.rescaled(1.0 / lambda)?;
            }
            SweepAxis::Capacity | SweepAxis::UniformCapacity => {
                let load = template.load();
                let c = as_capacity()?;
                cfg.capacity = match self {
                    SweepAxis::Capacity => CapacitySpec::Fixed(c),
                    _ => CapacitySpec::uniform(2 * c)?,
                };
                let lambda = load * cfg.capacity.mean() / cfg.servers.mean();
                cfg.users = cfg.users.rescaled(1.0 / lambda)?;
            }
            SweepAxis::ServerCv2 => cfg.servers = cv_law(&cfg.servers)?,
            SweepAxis::UserCv2 => cfg.users = cv_law(&cfg.users)?,
        }
        Ok(cfg)
    }
}

impl fmt::Display for SweepAxis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepAxis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "load" | "rho" => Ok(SweepAxis::Load),
            "capacity" | "c" => Ok(SweepAxis::Capacity),
            "uniform-capacity" => Ok(SweepAxis::UniformCapacity),
            "server-cv2" => Ok(SweepAxis::ServerCv2),
            "user-cv2" => Ok(SweepAxis::UserCv2),
            other => Err(invalid(format!("unknown sweep axis {other:?}"))),
        }
    }
}

/// Which analytic value accompanies the simulated one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Estimate {
    /// The exact model for the configuration, when one exists.
    #[default]
    Exact,
    /// The heavy-traffic estimate for unit capacity.
    HeavyTraffic,
}

impl Estimate {
    fn value(self, cfg: &SimConfig) -> Result<f64> {
        match self {
            Estimate::Exact => Ok(predict(&cfg.users, &cfg.servers, &cfg.capacity)?.expected_distance),
            Estimate::HeavyTraffic => heavy_traffic_estimate(&cfg.users, &cfg.servers),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub axis_value: f64,
    /// A policy name, or `analytic` for the model row.
    pub policy: String,
    pub mean_distance: f64,
    pub stderr: f64,
    /// Request-distance variance (mean of the per-trial variances).
    pub variance: f64,
    pub matched_fraction: f64,
    pub analytic_value: Option<f64>,
    /// `analytic_value / mean_distance`
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub axis: SweepAxis,
    /// `(key, value)` pairs written as comment lines.
    pub header: Vec<(String, String)>,
    pub rows: Vec<SweepRow>,
    /// Points that could not be simulated, with the reason.
    pub failures: Vec<(f64, String)>,
}

impl SweepTable {
    pub const COLUMNS: [&'static str; 8] =
        ["axis_value", "policy", "mean_distance", "stderr", "variance", "matched_fraction", "analytic_value", "ratio"];

    /// Rows of one policy (or `analytic`) in axis order.
    pub fn series(&self, policy: &str) -> Vec<&SweepRow> {
        self.rows.iter().filter(|r| r.policy == policy).collect()
    }

    pub fn write_csv<W: Write>(&self, mut w: W) -> Result<()> {
        writeln!(w, "# axis: {}", self.axis)?;
        for (k, v) in &self.header {
            writeln!(w, "# {k}: {v}")?;
        }
        for (x, why) in &self.failures {
            writeln!(w, "# failed {x}: {why}")?;
        }
        let mut out = csv::Writer::from_writer(w);
        out.write_record(Self::COLUMNS)?;
        let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
        for r in &self.rows {
            out.write_record([
                r.axis_value.to_string(),
                r.policy.clone(),
                r.mean_distance.to_string(),
                r.stderr.to_string(),
                r.variance.to_string(),
                r.matched_fraction.to_string(),
                opt(r.analytic_value),
                opt(r.ratio),
            ])?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Simulates `template` at each axis value. Every point reuses the template
/// seed. Failing points are recorded and skipped.
pub fn sweep(template: &SimConfig, axis: SweepAxis, values: &[f64], estimate: Estimate) -> SweepTable {
    let mut header = vec![
        ("users".to_string(), template.users.to_string()),
        ("servers".to_string(), template.servers.to_string()),
        ("capacity".to_string(), template.capacity.to_string()),
        ("n_users".to_string(), template.n_users.to_string()),
        ("trials".to_string(), template.trials.to_string()),
        ("seed".to_string(), template.seed.to_string()),
    ];
    if estimate == Estimate::HeavyTraffic {
        header.push(("estimate".to_string(), "heavy-traffic".to_string()));
    }
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    for &x in values {
        let cfg = match axis.apply(template, x) {
            Ok(cfg) => cfg,
            Err(e) => {
                failures.push((x, e.to_string()));
                continue;
            }
        };
        let sim = match run(&cfg) {
            Ok(s) => s,
            Err(e) => {
                failures.push((x, e.to_string()));
                continue;
            }
        };
        let analytic = estimate.value(&cfg).ok();
        for p in &sim.policies {
            rows.push(SweepRow {
                axis_value: x,
                policy: p.policy.to_string(),
                mean_distance: p.mean_distance,
                stderr: p.stderr,
                variance: p.distance_variance,
                matched_fraction: sim.matched_fraction,
                analytic_value: analytic,
                ratio: analytic.map(|a| a / p.mean_distance),
            });
        }
        if let Some(a) = analytic {
            rows.push(SweepRow {
                axis_value: x,
                policy: "analytic".to_string(),
                mean_distance: a,
                stderr: 0.0,
                variance: f64::NAN,
                matched_fraction: 1.0,
                analytic_value: Some(a),
                ratio: Some(1.0),
            });
        }
    }
    SweepTable { axis, header, rows, failures }
}
