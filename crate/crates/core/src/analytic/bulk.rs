use serde::{Deserialize, Serialize};

use super::{check_rate, check_stable};
use crate::error::{invalid, Result};
use crate::numerics::root_in_unit_interval;

/// Poisson users of rate `λ`, Poisson servers of rate `μ`, capacity `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BulkMM1Model {
    pub lambda: f64,
    pub mu: f64,
    pub c: u32,
}

impl BulkMM1Model {
    pub fn new(lambda: f64, mu: f64, c: u32) -> Result<Self> {
        check_rate("lambda", lambda)?;
        check_rate("mu", mu)?;
        if c == 0 {
            return Err(invalid("capacity must be at least 1"));
        }
        let m = Self { lambda, mu, c };
        check_stable(m.load(), c as f64)?;
        Ok(m)
    }

    /// `ρ = λ/μ`
    pub fn load(&self) -> f64 {
        self.lambda / self.mu
    }

    /// The root in `(0, 1)` of `μ r^{c+1} − (λ + μ) r + λ`.
    pub fn root(&self) -> Result<f64> {
        let (l, m, c) = (self.lambda, self.mu, self.c as i32);
        let f = move |r: f64| m * r.powi(c + 1) - (l + m) * r + l;
        let df = move |r: f64| (c + 1) as f64 * m * r.powi(c) - (l + m);
        root_in_unit_interval(f, Some(&df), "bulk service root")
    }

    /// `E[D] = r₀ / (λ (1 − r₀))`
    pub fn expected_distance(&self) -> Result<f64> {
        let r0 = self.root()?;
        Ok(r0 / (self.lambda * (1.0 - r0)))
    }
}

pub fn bulk_mm1_expected_distance(m: &BulkMM1Model) -> Result<f64> {
    m.expected_distance()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn single_capacity_is_mm1() {
        let m = BulkMM1Model::new(0.5, 1.0, 1).unwrap();
        assert!((m.expected_distance().unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn capacity_two() {
        let m = BulkMM1Model::new(0.5, 1.0, 2).unwrap();
        let r0 = (3f64.sqrt() - 1.0) / 2.0;
        assert!((m.root().unwrap() - r0).abs() < 1e-12);
        let expect = r0 / (0.5 * (1.0 - r0));
        assert!((m.expected_distance().unwrap() - expect).abs() < 1e-12);
        assert!((expect - 1.154_700_538_379_251_5).abs() < 1e-12);
    }

    #[test]
    fn light_traffic_and_instability() {
        for c in [1, 2, 5] {
            let m = BulkMM1Model::new(1e-6, 1.0, c).unwrap();
            assert!((m.expected_distance().unwrap() - 1.0).abs() < 1e-5);
        }
        assert!(matches!(BulkMM1Model::new(2.0, 1.0, 2), Err(Error::Unstable { .. })));
        assert!(BulkMM1Model::new(0.5, 1.0, 0).is_err());
    }

    #[test]
    fn nonincreasing_in_capacity() {
        let mut prev = f64::INFINITY;
        for c in 1..=16 {
            let m = BulkMM1Model::new(0.8, 1.0, c).unwrap();
            let d = m.expected_distance().unwrap();
            assert!(d <= prev + 1e-12);
            prev = d;
        }
    }
}
