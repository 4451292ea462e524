use crate::error::{invalid, Result};

/// Users and capacitated servers on the half-line, both sorted by position.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialInstance {
    users: Vec<f64>,
    servers: Vec<f64>,
    capacities: Vec<u32>,
}

fn check_positions(name: &str, xs: &[f64]) -> Result<()> {
    if let Some(x) = xs.iter().find(|x| !x.is_finite() || **x < 0.0) {
        return Err(invalid(format!("{name} position {x} must be finite and nonnegative")));
    }
    if xs.windows(2).any(|w| w[1] < w[0]) {
        return Err(invalid(format!("{name} positions must be sorted nondecreasing")));
    }
    Ok(())
}

impl SpatialInstance {
    pub fn new(users: Vec<f64>, servers: Vec<f64>, capacities: Vec<u32>) -> Result<Self> {
        check_positions("user", &users)?;
        check_positions("server", &servers)?;
        if capacities.len() != servers.len() {
            return Err(invalid(format!("{} capacities given for {} servers", capacities.len(), servers.len())));
        }
        if capacities.contains(&0) {
            return Err(invalid("server capacities must be at least 1"));
        }
        Ok(Self { users, servers, capacities })
    }

    /// Every server gets capacity `c`.
    pub fn with_capacity(users: Vec<f64>, servers: Vec<f64>, c: u32) -> Result<Self> {
        let n = servers.len();
        Self::new(users, servers, vec![c; n])
    }

    pub fn users(&self) -> &[f64] {
        &self.users
    }

    pub fn servers(&self) -> &[f64] {
        &self.servers
    }

    pub fn capacities(&self) -> &[u32] {
        &self.capacities
    }

    pub fn total_capacity(&self) -> usize {
        self.capacities.iter().map(|&c| c as usize).sum()
    }

    /// Same servers, users restricted to `keep` (indices into the current
    /// user list, increasing).
    pub fn restrict_users(&self, keep: &[usize]) -> Self {
        Self {
            users: keep.iter().map(|&i| self.users[i]).collect(),
            servers: self.servers.clone(),
            capacities: self.capacities.clone(),
        }
    }

    /// Servers expanded into unit slots: `(position, server index)` in order.
    pub(crate) fn slots(&self) -> Vec<(f64, usize)> {
        let mut out = Vec::with_capacity(self.total_capacity());
        for (j, (&s, &c)) in self.servers.iter().zip(&self.capacities).enumerate() {
            out.extend(std::iter::repeat_n((s, j), c as usize));
        }
        out
    }
}
