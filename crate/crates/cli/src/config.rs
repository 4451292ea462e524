use std::fs;
use std::path::{Path, PathBuf};

use linealloc::analytic::Side;
use linealloc::distributions::{CapacitySpec, DistanceDistribution};
use linealloc::policies::Policy;
use linealloc::simulate::{Estimate, SweepAxis};
use serde::Deserialize;

use crate::args::{ModelArgs, ModelName};
use crate::error::{usage, CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Analytic,
    Simulate,
    Compare,
    Figure,
}

impl Mode {
    fn name(self) -> &'static str {
        match self {
            Mode::Analytic => "analytic",
            Mode::Simulate => "simulate",
            Mode::Compare => "compare",
            Mode::Figure => "figure",
        }
    }
}

/// A law given as flag text (`"det:1"`) or in structured form.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum LawField {
    Text(String),
    Spec(DistanceDistribution),
}

/// A capacity given as a number, a pmf array or flag text.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum CapacityField {
    Fixed(u32),
    Pmf(Vec<f64>),
    Text(String),
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub axis: SweepAxis,
    pub values: Vec<f64>,
}

/// A JSON experiment file. Keys mirror the command-line flags; flags given
/// on the command line take precedence.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentSpec {
    pub name: Option<String>,
    pub mode: Option<Mode>,
    pub model: Option<ModelName>,
    pub lambda: Option<f64>,
    pub mu: Option<f64>,
    pub capacity: Option<CapacityField>,
    pub users: Option<LawField>,
    pub servers: Option<LawField>,
    pub side: Option<Side>,
    pub x: Option<Vec<f64>>,
    pub n_users: Option<usize>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    pub policies: Option<Vec<Policy>>,
    pub server_count: Option<usize>,
    pub sweep: Option<SweepSpec>,
    pub estimate: Option<Estimate>,
    pub output: Option<PathBuf>,
    pub figure: Option<String>,
    pub part: Option<String>,
    pub scale: Option<f64>,
    pub jobs: Option<usize>,
}

impl ExperimentSpec {
    /// Reads the file at `path`, or returns an empty spec for `None`. A
    /// `mode` in the file must agree with the subcommand.
    pub fn load(path: Option<&Path>, mode: Mode) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = fs::read_to_string(path).map_err(|source| CliError::File { path: path.to_path_buf(), source })?;
        let spec: Self =
            serde_json::from_str(&text).map_err(|source| CliError::Config { path: path.to_path_buf(), source })?;
        match spec.mode {
            Some(m) if m != mode => Err(usage(format!(
                "{}: mode {:?} does not match the {} command",
                path.display(),
                m.name(),
                mode.name()
            ))),
            _ => Ok(spec),
        }
    }

    fn law(field: &Option<LawField>) -> CliResult<Option<DistanceDistribution>> {
        match field {
            None => Ok(None),
            Some(LawField::Spec(d)) => Ok(Some(d.clone())),
            Some(LawField::Text(s)) => s.parse().map(Some).map_err(|e| usage(format!("config: {e}"))),
        }
    }

    fn capacity(&self) -> CliResult<Option<CapacitySpec>> {
        let spec = match &self.capacity {
            None => return Ok(None),
            Some(CapacityField::Fixed(c)) => CapacitySpec::Fixed(*c),
            Some(CapacityField::Pmf(p)) => CapacitySpec::Pmf(p.clone()),
            Some(CapacityField::Text(s)) => s.parse().map_err(|e| usage(format!("config: {e}")))?,
        };
        spec.validate().map_err(|e| usage(format!("config: {e}")))?;
        Ok(Some(spec))
    }
}

impl ModelArgs {
    /// Fills every parameter missing from the flags with the file's value.
    pub fn overlay(self, spec: &ExperimentSpec) -> CliResult<Self> {
        Ok(Self {
            lambda: self.lambda.or(spec.lambda),
            mu: self.mu.or(spec.mu),
            capacity: match self.capacity {
                Some(c) => Some(c),
                None => spec.capacity()?,
            },
            users: match self.users {
                Some(d) => Some(d),
                None => ExperimentSpec::law(&spec.users)?,
            },
            servers: match self.servers {
                Some(d) => Some(d),
                None => ExperimentSpec::law(&spec.servers)?,
            },
        })
    }

    /// The user law from `--users`, or Poisson users from `--lambda`.
    pub fn users(&self) -> CliResult<DistanceDistribution> {
        Self::law("users", "lambda", &self.users, self.lambda)
    }

    /// The server law from `--servers`, or Poisson servers from `--mu`.
    pub fn servers(&self) -> CliResult<DistanceDistribution> {
        Self::law("servers", "mu", &self.servers, self.mu)
    }

    pub fn capacity(&self) -> CapacitySpec {
        self.capacity.clone().unwrap_or(CapacitySpec::Fixed(1))
    }

    fn law(
        name: &str,
        density: &str,
        law: &Option<DistanceDistribution>,
        rate: Option<f64>,
    ) -> CliResult<DistanceDistribution> {
        match (law, rate) {
            (Some(d), None) => Ok(d.clone()),
            (None, Some(r)) => Ok(DistanceDistribution::exponential(r)?),
            (Some(_), Some(_)) => Err(usage(format!("give --{name} or --{density}, not both"))),
            (None, None) => Err(usage(format!("missing --{name} (or --{density})"))),
        }
    }
}
