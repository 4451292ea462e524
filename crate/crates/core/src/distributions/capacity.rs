use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Server capacity: a constant, or i.i.d. draws from a pmf on `{1, …, c_max}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CapacitySpec {
    Fixed(u32),
    /// `pmf[j − 1] = P(capacity = j)`.
    Pmf(Vec<f64>),
}

impl CapacitySpec {
    /// Uniform pmf on `{1, …, max}`.
    pub fn uniform(max: u32) -> Result<Self> {
        if max == 0 {
            return Err(invalid("maximum capacity must be at least 1"));
        }
        Ok(CapacitySpec::Pmf(vec![1.0 / max as f64; max as usize]))
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CapacitySpec::Fixed(0) => Err(invalid("capacity must be at least 1")),
            CapacitySpec::Fixed(_) => Ok(()),
            CapacitySpec::Pmf(p) => {
                if p.is_empty() || p.iter().any(|x| !(0.0..=1.0).contains(x)) {
                    return Err(invalid("capacity pmf entries must lie in [0, 1]"));
                }
                let total: f64 = p.iter().sum();
                if (total - 1.0).abs() > 1e-9 {
                    return Err(invalid(format!("capacity pmf sums to {total}, not 1")));
                }
                if p.last() == Some(&0.0) {
                    return Err(invalid("capacity pmf must end with a positive entry"));
                }
                Ok(())
            }
        }
    }

    /// `c̄`
    pub fn mean(&self) -> f64 {
        match self {
            CapacitySpec::Fixed(c) => *c as f64,
            CapacitySpec::Pmf(p) => p.iter().enumerate().map(|(j, q)| (j + 1) as f64 * q).sum(),
        }
    }

    pub fn max(&self) -> u32 {
        match self {
            CapacitySpec::Fixed(c) => *c,
            CapacitySpec::Pmf(p) => p.len() as u32,
        }
    }

    /// The pmf on `{1, …, max}`.
    pub fn pmf(&self) -> Vec<f64> {
        match self {
            CapacitySpec::Fixed(c) => {
                let mut p = vec![0.0; *c as usize];
                p[*c as usize - 1] = 1.0;
                p
            }
            CapacitySpec::Pmf(p) => p.clone(),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        match self {
            CapacitySpec::Fixed(c) => *c,
            CapacitySpec::Pmf(p) => {
                let u: f64 = rng.random();
                let mut acc = 0.0;
                for (j, q) in p.iter().enumerate() {
                    acc += q;
                    if u < acc {
                        return j as u32 + 1;
                    }
                }
                p.len() as u32
            }
        }
    }
}

/// Parses `C` (fixed), `unif:MAX`, or a comma-separated pmf `p1,p2,…`.
impl FromStr for CapacitySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let spec = if let Some(max) = s.strip_prefix("unif:") {
            CapacitySpec::uniform(max.parse().map_err(|e| invalid(format!("bad capacity {s:?}: {e}")))?)?
        } else if s.contains(',') {
            let p = s
                .split(',')
                .map(|x| x.trim().parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|e| invalid(format!("bad capacity pmf {s:?}: {e}")))?;
            CapacitySpec::Pmf(p)
        } else {
            CapacitySpec::Fixed(s.parse().map_err(|e| invalid(format!("bad capacity {s:?}: {e}")))?)
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for CapacitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CapacitySpec::Fixed(c) => write!(f, "{c}"),
            CapacitySpec::Pmf(p) => {
                let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
                write!(f, "{}", parts.join(","))
            }
        }
    }
}
