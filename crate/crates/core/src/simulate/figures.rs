use std::fmt;
use std::str::FromStr;

use super::{sweep, Estimate, SimConfig, SweepAxis, SweepTable, DEFAULT_SEED, DEFAULT_TRIALS};
use crate::distributions::{h2_from_cv, CapacitySpec, DistanceDistribution};
use crate::error::{invalid, Error, Result};
use crate::policies::Policy;

const BASE_USERS: f64 = 1e5;
/// Squared coefficient of variation of the default H2 law.
const H2_CV2: f64 = 4.0;

/// Experiment presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Heavy-traffic estimate over simulation, unit capacity.
    HeavyTraffic,
    /// Load sweep at `c = 2` for exponential, deterministic and H2 servers.
    Load,
    /// `cv²` sweep of H2 servers against H2 users at `λ = μ = 1`, `c = 2`.
    Variability,
    /// Capacity sweep at `ρ = 0.8`.
    Capacity,
    /// Constant against uniformly random capacity at `ρ = 0.8`.
    CapacitySpread,
    /// All policies over load at `c = 1`.
    PoliciesByLoad,
    /// All policies over capacity at `ρ = 0.4`.
    PoliciesByCapacity,
}

impl Figure {
    pub const ALL: [Figure; 7] = [
        Figure::HeavyTraffic,
        Figure::Load,
        Figure::Variability,
        Figure::Capacity,
        Figure::CapacitySpread,
        Figure::PoliciesByLoad,
        Figure::PoliciesByCapacity,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Figure::HeavyTraffic => "3",
            Figure::Load => "5",
            Figure::Variability => "6",
            Figure::Capacity => "7",
            Figure::CapacitySpread => "8",
            Figure::PoliciesByLoad => "9a",
            Figure::PoliciesByCapacity => "9b",
        }
    }

    /// The sweeps behind this figure, one per curve family.
    pub fn sweeps(self, opts: &FigureOptions) -> Result<Vec<FigureSweep>> {
        let n = ((BASE_USERS * opts.scale).round() as usize).max(1);
        let exp = DistanceDistribution::exponential;
        let det = || DistanceDistribution::deterministic(1.0);
        let unif = || DistanceDistribution::uniform(2.0);
        let h2 = || h2_from_cv(H2_CV2, 1.0);
        let template = |users: DistanceDistribution, servers: DistanceDistribution, c: u32| {
            SimConfig::new(n, users, servers, CapacitySpec::Fixed(c)).with_trials(opts.trials).with_seed(opts.seed)
        };
        let loads = |xs: &[f64]| xs.to_vec();
        let grid = |lo: u32, hi: u32| (lo..=hi).map(f64::from).collect::<Vec<_>>();
        let tenths = loads(&[0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9]);
        let entry = |name: String, template: SimConfig, axis, values: Vec<f64>, estimate| FigureSweep {
            name,
            template,
            axis,
            values,
            estimate,
        };
        let (unit, busy) = (exp(1.0)?, exp(0.8)?);
        let id = self.id();
        let sweeps = match self {
            Figure::HeavyTraffic => {
                let values = loads(&[0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.98]);
                vec![
                    entry(
                        format!("fig{id}_det"),
                        template(exp(0.5)?, det()?, 1),
                        SweepAxis::Load,
                        values.clone(),
                        Estimate::HeavyTraffic,
                    ),
                    entry(
                        format!("fig{id}_unif"),
                        template(exp(0.5)?, unif()?, 1),
                        SweepAxis::Load,
                        values,
                        Estimate::HeavyTraffic,
                    ),
                ]
            }
            Figure::Load => [("exp", exp(1.0)?), ("det", det()?), ("h2", h2()?)]
                .into_iter()
                .map(|(k, s)| {
                    entry(
                        format!("fig{id}_{k}"),
                        template(unit.clone(), s, 2),
                        SweepAxis::Load,
                        tenths.clone(),
                        Estimate::Exact,
                    )
                })
                .collect(),
            Figure::Variability => {
                let values = grid(1, 10);
                vec![
                    entry(
                        format!("fig{id}_m_h2"),
                        template(exp(1.0)?, exp(1.0)?, 2),
                        SweepAxis::ServerCv2,
                        values.clone(),
                        Estimate::Exact,
                    ),
                    entry(
                        format!("fig{id}_h2_m"),
                        template(exp(1.0)?, exp(1.0)?, 2),
                        SweepAxis::UserCv2,
                        values,
                        Estimate::Exact,
                    ),
                ]
            }
            Figure::Capacity => [("exp", exp(1.0)?), ("det", det()?), ("h2", h2()?)]
                .into_iter()
                .map(|(k, s)| {
                    entry(
                        format!("fig{id}_{k}"),
                        template(busy.clone(), s, 1),
                        SweepAxis::Capacity,
                        grid(1, 16),
                        Estimate::Exact,
                    )
                })
                .collect(),
            Figure::CapacitySpread => {
                let mut out = Vec::new();
                for (k, s) in [("h2", h2()?), ("det", det()?)] {
                    let t = template(exp(0.8)?, s, 1);
                    out.push(entry(
                        format!("fig{id}_{k}_constant"),
                        t.clone(),
                        SweepAxis::Capacity,
                        grid(1, 8),
                        Estimate::Exact,
                    ));
                    out.push(entry(
                        format!("fig{id}_{k}_uniform"),
                        t,
                        SweepAxis::UniformCapacity,
                        grid(1, 8),
                        Estimate::Exact,
                    ));
                }
                out
            }
            Figure::PoliciesByLoad => vec![entry(
                format!("fig{id}"),
                template(exp(0.5)?, exp(1.0)?, 1).with_policies(&Policy::ALL),
                SweepAxis::Load,
                tenths,
                Estimate::Exact,
            )],
            Figure::PoliciesByCapacity => vec![entry(
                format!("fig{id}"),
                template(exp(0.4)?, exp(1.0)?, 1).with_policies(&Policy::ALL),
                SweepAxis::Capacity,
                grid(1, 8),
                Estimate::Exact,
            )],
        };
        Ok(sweeps)
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.id() == s.trim_start_matches("fig"))
            .ok_or_else(|| invalid(format!("unknown figure {s:?}; expected one of 3, 5, 6, 7, 8, 9a, 9b")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureOptions {
    /// Multiplier on the default `10⁵` users per trial.
    pub scale: f64,
    pub seed: u64,
    pub trials: usize,
}

impl Default for FigureOptions {
    fn default() -> Self {
        Self { scale: 1.0, seed: DEFAULT_SEED, trials: DEFAULT_TRIALS }
    }
}

#[derive(Debug, Clone)]
pub struct FigureSweep {
    /// File stem of the output table.
    pub name: String,
    pub template: SimConfig,
    pub axis: SweepAxis,
    pub values: Vec<f64>,
    pub estimate: Estimate,
}

impl FigureSweep {
    pub fn run(&self) -> SweepTable {
        let mut table = sweep(&self.template, self.axis, &self.values, self.estimate);
        table.header.insert(0, ("sweep".to_string(), self.name.clone()));
        table
    }
}

/// Runs every sweep of a figure, returning `(file stem, table)` pairs.
pub fn run_figure(figure: Figure, opts: &FigureOptions) -> Result<Vec<(String, SweepTable)>> {
    if !(opts.scale > 0.0 && opts.scale.is_finite()) {
        return Err(invalid(format!("scale {} must be positive", opts.scale)));
    }
    Ok(figure.sweeps(opts)?.iter().map(|s| (s.name.clone(), s.run())).collect())
}
