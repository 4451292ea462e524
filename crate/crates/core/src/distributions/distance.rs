use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::numerics::{exp_divided_difference, Polynomial};

/// Largest index kept in an arrival-count pmf.
const MAX_ARRIVALS: usize = 10_000;
/// Tail mass below which an arrival-count pmf is truncated.
const ARRIVAL_TAIL: f64 = 1e-12;

/// Parameters of a distance law.
#[derive(Debug, Clone, PartialEq)]
pub enum DistanceKind {
    Exponential {
        rate: f64,
    },
    Deterministic {
        value: f64,
    },
    /// Uniform on `(0, max)`.
    Uniform {
        max: f64,
    },
    HyperExponential {
        probs: Vec<f64>,
        rates: Vec<f64>,
    },
}

/// A validated inter-point distance law.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "DistanceSpec", into = "DistanceSpec")]
pub struct DistanceDistribution {
    kind: DistanceKind,
}

fn positive(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() && v > 0.0 {
        Ok(v)
    } else {
        Err(invalid(format!("{name} must be positive and finite, got {v}")))
    }
}

impl DistanceDistribution {
    pub fn exponential(rate: f64) -> Result<Self> {
        Ok(Self { kind: DistanceKind::Exponential { rate: positive("rate", rate)? } })
    }

    pub fn deterministic(value: f64) -> Result<Self> {
        Ok(Self { kind: DistanceKind::Deterministic { value: positive("value", value)? } })
    }

    pub fn uniform(max: f64) -> Result<Self> {
        Ok(Self { kind: DistanceKind::Uniform { max: positive("max", max)? } })
    }

    pub fn hyperexponential(probs: Vec<f64>, rates: Vec<f64>) -> Result<Self> {
        if probs.is_empty() || probs.len() != rates.len() {
            return Err(invalid("hyperexponential needs matching, non-empty phase lists"));
        }
        if probs.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(invalid("phase probabilities must lie in [0, 1]"));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(invalid(format!("phase probabilities sum to {total}, not 1")));
        }
        for &r in &rates {
            positive("phase rate", r)?;
        }
        Ok(Self { kind: DistanceKind::HyperExponential { probs, rates } })
    }

    /// Exponential, deterministic or uniform law with the given mean.
    pub fn with_mean(kind: &str, mean: f64) -> Result<Self> {
        positive("mean", mean)?;
        match kind {
            "exp" => Self::exponential(1.0 / mean),
            "det" => Self::deterministic(mean),
            "unif" => Self::uniform(2.0 * mean),
            other => Err(invalid(format!("unknown distribution kind {other:?}"))),
        }
    }

    /// Same shape, scaled to the given mean.
    pub fn rescaled(&self, mean: f64) -> Result<Self> {
        let k = positive("mean", mean)? / self.mean();
        match &self.kind {
            DistanceKind::Exponential { rate } => Self::exponential(rate / k),
            DistanceKind::Deterministic { value } => Self::deterministic(value * k),
            DistanceKind::Uniform { max } => Self::uniform(max * k),
            DistanceKind::HyperExponential { probs, rates } => {
                Self::hyperexponential(probs.clone(), rates.iter().map(|r| r / k).collect())
            }
        }
    }

    pub fn kind(&self) -> &DistanceKind {
        &self.kind
    }

    pub fn is_exponential(&self) -> bool {
        matches!(self.kind, DistanceKind::Exponential { .. })
    }

    pub fn mean(&self) -> f64 {
        match &self.kind {
            DistanceKind::Exponential { rate } => 1.0 / rate,
            DistanceKind::Deterministic { value } => *value,
            DistanceKind::Uniform { max } => max / 2.0,
            DistanceKind::HyperExponential { probs, rates } => probs.iter().zip(rates).map(|(p, r)| p / r).sum(),
        }
    }

    /// Reciprocal of the mean: the point density of the renewal process.
    pub fn rate(&self) -> f64 {
        1.0 / self.mean()
    }

    pub fn second_moment(&self) -> f64 {
        match &self.kind {
            DistanceKind::Exponential { rate } => 2.0 / (rate * rate),
            DistanceKind::Deterministic { value } => value * value,
            DistanceKind::Uniform { max } => max * max / 3.0,
            DistanceKind::HyperExponential { probs, rates } => {
                probs.iter().zip(rates).map(|(p, r)| 2.0 * p / (r * r)).sum()
            }
        }
    }

    pub fn variance(&self) -> f64 {
        match &self.kind {
            DistanceKind::Exponential { rate } => 1.0 / (rate * rate),
            DistanceKind::Deterministic { .. } => 0.0,
            DistanceKind::Uniform { max } => max * max / 12.0,
            DistanceKind::HyperExponential { .. } => {
                let m = self.mean();
                self.second_moment() - m * m
            }
        }
    }

    /// Squared coefficient of variation.
    pub fn cv2(&self) -> f64 {
        let m = self.mean();
        self.variance() / (m * m)
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match &self.kind {
            DistanceKind::Exponential { rate } => -(-rate * x).exp_m1(),
            DistanceKind::Deterministic { value } => {
                if x >= *value {
                    1.0
                } else {
                    0.0
                }
            }
            DistanceKind::Uniform { max } => (x / max).min(1.0),
            DistanceKind::HyperExponential { probs, rates } => {
                1.0 - probs.iter().zip(rates).map(|(p, r)| p * (-r * x).exp()).sum::<f64>()
            }
        }
    }

    /// Laplace–Stieltjes transform `E[e^{−sX}]` for `s ≥ 0`.
    pub fn lst(&self, s: f64) -> f64 {
        if s == 0.0 {
            return 1.0;
        }
        self.lst_complex(Complex64::new(s, 0.0)).re
    }

    /// The transform continued to complex arguments with `Re s ≥ 0`.
    pub fn lst_complex(&self, s: Complex64) -> Complex64 {
        match &self.kind {
            DistanceKind::Exponential { rate } => *rate / (*rate + s),
            DistanceKind::Deterministic { value } => (-s * *value).exp(),
            DistanceKind::Uniform { max } => exp_divided_difference(Complex64::new(0.0, 0.0), -s * *max),
            DistanceKind::HyperExponential { probs, rates } => {
                probs.iter().zip(rates).map(|(p, r)| *p * *r / (*r + s)).sum()
            }
        }
    }

    /// The transform as numerator and denominator polynomials in `s`, when it
    /// is rational.
    pub fn rational_lst(&self) -> Option<(Polynomial, Polynomial)> {
        match &self.kind {
            DistanceKind::Exponential { rate } => {
                Some((Polynomial::constant(*rate), Polynomial::new(vec![*rate, 1.0])))
            }
            DistanceKind::HyperExponential { probs, rates } => {
                let mut num = Polynomial::constant(0.0);
                let mut den = Polynomial::constant(1.0);
                for (j, (p, r)) in probs.iter().zip(rates).enumerate() {
                    let mut term = Polynomial::constant(p * r);
                    for (k, rk) in rates.iter().enumerate() {
                        if k != j {
                            term = &term * &Polynomial::new(vec![*rk, 1.0]);
                        }
                    }
                    num = &num + &term;
                    den = &den * &Polynomial::new(vec![*r, 1.0]);
                }
                Some((num, den))
            }
            _ => None,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match &self.kind {
            DistanceKind::Exponential { rate } => exp_draw(*rate, rng),
            DistanceKind::Deterministic { value } => *value,
            DistanceKind::Uniform { max } => max * rng.random::<f64>(),
            DistanceKind::HyperExponential { probs, rates } => {
                let u: f64 = rng.random();
                let mut acc = 0.0;
                let mut phase = rates.len() - 1;
                for (j, p) in probs.iter().enumerate() {
                    acc += p;
                    if u < acc {
                        phase = j;
                        break;
                    }
                }
                exp_draw(rates[phase], rng)
            }
        }
    }

    /// `k_v`: probability that exactly `v` Poisson(`lambda`) points fall in one
    /// gap of this law, for `v = 0, 1, …` until the remaining mass is below
    /// `1e-12`.
    pub fn arrival_pmf(&self, lambda: f64) -> Result<Vec<f64>> {
        positive("arrival rate", lambda)?;
        let mut out = Vec::new();
        let mut cumulative = 0.0;
        match &self.kind {
            DistanceKind::Exponential { rate } => geometric_mix(&[1.0], &[*rate], lambda, &mut out, &mut cumulative),
            DistanceKind::HyperExponential { probs, rates } => {
                geometric_mix(probs, rates, lambda, &mut out, &mut cumulative)
            }
            DistanceKind::Deterministic { value } => {
                let m = lambda * value;
                let mut log_p = -m;
                for v in 0..MAX_ARRIVALS {
                    if v > 0 {
                        log_p += m.ln() - (v as f64).ln();
                    }
                    let p = log_p.exp();
                    out.push(p);
                    cumulative += p;
                    if cumulative > 1.0 - ARRIVAL_TAIL && v as f64 > m {
                        break;
                    }
                }
            }
            DistanceKind::Uniform { max } => {
                // k_v = P(Poisson(λb) > v) / (λb)
                let m = lambda * max;
                let top = (m + 40.0 * m.sqrt() + 60.0).ceil() as usize;
                let top = top.min(MAX_ARRIVALS + 1);
                let mut pmf = Vec::with_capacity(top + 1);
                let mut log_p = -m;
                for j in 0..=top {
                    if j > 0 {
                        log_p += m.ln() - (j as f64).ln();
                    }
                    pmf.push(log_p.exp());
                }
                let mut tail = vec![0.0; top + 2];
                for j in (0..=top).rev() {
                    tail[j] = tail[j + 1] + pmf[j];
                }
                for v in 0..top {
                    let p = tail[v + 1] / m;
                    out.push(p);
                    cumulative += p;
                    if cumulative > 1.0 - ARRIVAL_TAIL {
                        break;
                    }
                }
            }
        }
        if cumulative < 1.0 - 1e-9 {
            return Err(Error::Numeric(format!(
                "arrival-count pmf truncated with mass {cumulative} at {} terms",
                out.len()
            )));
        }
        Ok(out)
    }
}

fn exp_draw<R: Rng + ?Sized>(rate: f64, rng: &mut R) -> f64 {
    // rate was validated as positive and finite
    Exp::new(rate).map(|d| d.sample(rng)).unwrap_or(f64::NAN)
}

fn geometric_mix(probs: &[f64], rates: &[f64], lambda: f64, out: &mut Vec<f64>, cumulative: &mut f64) {
    // P(v | phase rate μ) = (μ/(λ+μ)) (λ/(λ+μ))^v
    let q: Vec<f64> = rates.iter().map(|r| lambda / (lambda + r)).collect();
    let mut terms: Vec<f64> = probs.iter().zip(rates).map(|(p, r)| p * r / (lambda + r)).collect();
    for _ in 0..MAX_ARRIVALS {
        let p: f64 = terms.iter().sum();
        out.push(p);
        *cumulative += p;
        if *cumulative > 1.0 - ARRIVAL_TAIL {
            return;
        }
        terms.iter_mut().zip(&q).for_each(|(t, q)| *t *= q);
    }
}

/// Builds the order-2 hyperexponential with balanced means, the given mean
/// and squared coefficient of variation `cv2 ≥ 1`.
pub fn h2_from_cv(cv2: f64, mean: f64) -> Result<DistanceDistribution> {
    if !(cv2.is_finite() && cv2 >= 1.0) {
        return Err(invalid(format!("squared coefficient of variation must be ≥ 1, got {cv2}")));
    }
    positive("mean", mean)?;
    let p1 = 0.5 * (1.0 + ((cv2 - 1.0) / (cv2 + 1.0)).sqrt());
    let p2 = 1.0 - p1;
    DistanceDistribution::hyperexponential(vec![p1, p2], vec![2.0 * p1 / mean, 2.0 * p2 / mean])
}

/// Draws one distance from `d`.
pub fn sample<R: Rng + ?Sized>(d: &DistanceDistribution, rng: &mut R) -> f64 {
    d.sample(rng)
}

/// `E[e^{−sX}]` for `s ≥ 0`.
pub fn lst(d: &DistanceDistribution, s: f64) -> f64 {
    d.lst(s)
}

/// Serialized form of a [`DistanceDistribution`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum DistanceSpec {
    Exp {
        rate: f64,
    },
    Det {
        value: f64,
    },
    Uniform {
        max: f64,
    },
    Hyperexp {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        cv2: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mean: Option<f64>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        probs: Option<Vec<f64>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        rates: Option<Vec<f64>>,
    },
}

impl TryFrom<DistanceSpec> for DistanceDistribution {
    type Error = Error;

    fn try_from(spec: DistanceSpec) -> Result<Self> {
        match spec {
            DistanceSpec::Exp { rate } => Self::exponential(rate),
            DistanceSpec::Det { value } => Self::deterministic(value),
            DistanceSpec::Uniform { max } => Self::uniform(max),
            DistanceSpec::Hyperexp { cv2: Some(cv2), mean, probs: None, rates: None } => {
                h2_from_cv(cv2, mean.unwrap_or(1.0))
            }
            DistanceSpec::Hyperexp { cv2: None, mean: None, probs: Some(p), rates: Some(r) } => {
                Self::hyperexponential(p, r)
            }
            DistanceSpec::Hyperexp { .. } => {
                Err(invalid("hyperexp needs either cv2 (and optional mean) or probs and rates"))
            }
        }
    }
}

impl From<DistanceDistribution> for DistanceSpec {
    fn from(d: DistanceDistribution) -> Self {
        match d.kind {
            DistanceKind::Exponential { rate } => DistanceSpec::Exp { rate },
            DistanceKind::Deterministic { value } => DistanceSpec::Det { value },
            DistanceKind::Uniform { max } => DistanceSpec::Uniform { max },
            DistanceKind::HyperExponential { probs, rates } => {
                DistanceSpec::Hyperexp { cv2: None, mean: None, probs: Some(probs), rates: Some(rates) }
            }
        }
    }
}

/// Parses `exp:RATE`, `det:VALUE`, `unif:MAX` or `h2:CV2[:MEAN]`.
impl FromStr for DistanceDistribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |i: usize| -> Result<f64> {
            parts
                .get(i)
                .ok_or_else(|| invalid(format!("missing parameter in {s:?}")))?
                .trim()
                .parse::<f64>()
                .map_err(|e| invalid(format!("bad number in {s:?}: {e}")))
        };
        match (parts[0].trim(), parts.len()) {
            ("exp", 2) => Self::exponential(num(1)?),
            ("det", 2) => Self::deterministic(num(1)?),
            ("unif", 2) => Self::uniform(num(1)?),
            ("h2", 2) => h2_from_cv(num(1)?, 1.0),
            ("h2", 3) => h2_from_cv(num(1)?, num(2)?),
            _ => Err(invalid(format!(
                "cannot parse distribution {s:?}; expected exp:RATE, det:VALUE, unif:MAX or h2:CV2[:MEAN]"
            ))),
        }
    }
}

impl fmt::Display for DistanceDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            DistanceKind::Exponential { rate } => write!(f, "exp:{rate}"),
            DistanceKind::Deterministic { value } => write!(f, "det:{value}"),
            DistanceKind::Uniform { max } => write!(f, "unif:{max}"),
            DistanceKind::HyperExponential { .. } => {
                write!(f, "h2:{}:{}", fmt_short(self.cv2()), fmt_short(self.mean()))
            }
        }
    }
}

fn fmt_short(v: f64) -> String {
    let r = (v * 1e9).round() / 1e9;
    format!("{r}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn all_kinds() -> Vec<DistanceDistribution> {
        vec![
            DistanceDistribution::exponential(2.0).unwrap(),
            DistanceDistribution::deterministic(1.0).unwrap(),
            DistanceDistribution::uniform(2.0).unwrap(),
            h2_from_cv(4.0, 1.0).unwrap(),
        ]
    }

    #[test]
    fn rescaling_keeps_shape() {
        for d in all_kinds() {
            let r = d.rescaled(3.0).unwrap();
            assert!((r.mean() - 3.0).abs() < 1e-12);
            assert!((r.cv2() - d.cv2()).abs() < 1e-12);
            assert_eq!(std::mem::discriminant(r.kind()), std::mem::discriminant(d.kind()));
        }
    }

    #[test]
    fn lst_examples() {
        assert_eq!(DistanceDistribution::exponential(1.0).unwrap().lst(0.0), 1.0);
        let det = DistanceDistribution::deterministic(1.0).unwrap();
        assert!((det.lst(1.0) - (-1f64).exp()).abs() < 1e-15);
        let unif = DistanceDistribution::uniform(2.0).unwrap();
        // quadrature oracle for ∫₀² e^{−x}/2 dx
        let q = crate::numerics::integrate(&|x: f64| (-x).exp() / 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((unif.lst(1.0) - q).abs() < 1e-13);
        assert!((unif.lst(1.0) - 0.432_332_358_381_693_6).abs() < 1e-12);
    }

    #[test]
    fn lst_slope_is_mean() {
        let h = 1e-6;
        for d in all_kinds() {
            // one-sided, since the transform is defined for s ≥ 0
            let slope = -(-3.0 * d.lst(0.0) + 4.0 * d.lst(h) - d.lst(2.0 * h)) / (2.0 * h);
            assert!((slope - d.mean()).abs() < 1e-5, "{d}: {slope}");
        }
    }

    #[test]
    fn h2_examples() {
        let d = h2_from_cv(1.0, 1.0).unwrap();
        let DistanceKind::HyperExponential { probs, rates } = d.kind() else { panic!() };
        assert_eq!(probs, &vec![0.5, 0.5]);
        assert!(rates.iter().all(|r| (r - 1.0).abs() < 1e-15));

        let d = h2_from_cv(4.0, 1.0).unwrap();
        let DistanceKind::HyperExponential { probs, rates } = d.kind() else { panic!() };
        assert!((probs[0] - 0.887_298_334_620_741_7).abs() < 1e-12);
        assert!((rates[0] - 1.774_596_669_241_483).abs() < 1e-12);
        assert!((d.mean() - 1.0).abs() < 1e-12 && (d.cv2() - 4.0).abs() < 1e-9);

        let d2 = h2_from_cv(4.0, 2.0).unwrap();
        let DistanceKind::HyperExponential { probs: p2, rates: r2 } = d2.kind() else { panic!() };
        assert_eq!(p2, probs);
        assert!((r2[0] - rates[0] / 2.0).abs() < 1e-15);
        assert!(h2_from_cv(0.5, 1.0).is_err());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(DistanceDistribution::exponential(0.0).is_err());
        assert!(DistanceDistribution::uniform(-1.0).is_err());
        assert!(DistanceDistribution::hyperexponential(vec![0.5, 0.4], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn sampling_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let det = DistanceDistribution::deterministic(1.0).unwrap();
        assert_eq!(det.sample(&mut rng), 1.0);
        let n = 1_000_000;
        let exp = DistanceDistribution::exponential(1.0).unwrap();
        let m: f64 = (0..n).map(|_| exp.sample(&mut rng)).sum::<f64>() / n as f64;
        assert!((m - 1.0).abs() < 0.01);
        let unif = DistanceDistribution::uniform(2.0).unwrap();
        let xs: Vec<f64> = (0..n).map(|_| unif.sample(&mut rng)).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        assert!((var - 1.0 / 3.0).abs() < 0.01);
    }

    #[test]
    #[allow(clippy::needless_range_loop)]
    fn arrival_pmf_matches_quadrature() {
        let lambda = 0.7;
        for d in all_kinds() {
            let k = d.arrival_pmf(lambda).unwrap();
            assert!((k.iter().sum::<f64>() - 1.0).abs() < 1e-11);
            let mean: f64 = k.iter().enumerate().map(|(v, p)| v as f64 * p).sum();
            assert!((mean - lambda * d.mean()).abs() < 1e-9, "{d}");
            // oracle: ∫ e^{−λx}(λx)^v/v! dF(x) for v = 0..4
            for v in 0..5usize {
                let fact: f64 = (1..=v).map(|i| i as f64).product();
                let kern = |x: f64| (-lambda * x).exp() * (lambda * x).powi(v as i32) / fact;
                let oracle = match d.kind() {
                    DistanceKind::Deterministic { value } => kern(*value),
                    DistanceKind::Uniform { max } => {
                        crate::numerics::integrate(&|x| kern(x) / max, 0.0, *max, 1e-14).unwrap()
                    }
                    DistanceKind::Exponential { rate } => {
                        crate::numerics::integrate_to_infinity(&|x| kern(x) * rate * (-rate * x).exp(), 0.0, 1.0, 1e-14)
                            .unwrap()
                    }
                    DistanceKind::HyperExponential { probs, rates } => crate::numerics::integrate_to_infinity(
                        &|x| kern(x) * probs.iter().zip(rates).map(|(p, r)| p * r * (-r * x).exp()).sum::<f64>(),
                        0.0,
                        1.0,
                        1e-14,
                    )
                    .unwrap(),
                };
                assert!((k[v] - oracle).abs() < 1e-10, "{d} v={v}: {} vs {oracle}", k[v]);
            }
        }
    }

    #[test]
    fn arrival_pmf_heavy_deterministic() {
        let d = DistanceDistribution::deterministic(1.0).unwrap();
        let k = d.arrival_pmf(900.0).unwrap();
        assert!((k.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn rational_form_matches_transform() {
        for d in [DistanceDistribution::exponential(1.5).unwrap(), h2_from_cv(4.0, 1.0).unwrap()] {
            let (n, den) = d.rational_lst().unwrap();
            let s = Complex64::new(0.4, -0.9);
            assert!((n.eval(s) / den.eval(s) - d.lst_complex(s)).norm() < 1e-14);
        }
        assert!(DistanceDistribution::deterministic(1.0).unwrap().rational_lst().is_none());
    }

    #[test]
    fn spec_round_trip_and_parsing() {
        let d: DistanceDistribution = serde_json::from_str(r#"{"kind":"hyperexp","cv2":4,"mean":1}"#).unwrap();
        assert!((d.cv2() - 4.0).abs() < 1e-9);
        let back: DistanceDistribution = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back, d);
        let e: DistanceDistribution = serde_json::from_str(r#"{"kind":"exp","rate":2}"#).unwrap();
        assert_eq!(e, DistanceDistribution::exponential(2.0).unwrap());
        assert!(serde_json::from_str::<DistanceDistribution>(r#"{"kind":"exp","rate":-1}"#).is_err());

        assert_eq!("det:1".parse::<DistanceDistribution>().unwrap().mean(), 1.0);
        assert_eq!("unif:2".parse::<DistanceDistribution>().unwrap().mean(), 1.0);
        assert!(("h2:4:2".parse::<DistanceDistribution>().unwrap().mean() - 2.0).abs() < 1e-12);
        assert!("gamma:2".parse::<DistanceDistribution>().is_err());
        let h: DistanceDistribution = "h2:4".parse().unwrap();
        assert_eq!(h.to_string().parse::<DistanceDistribution>().unwrap().mean(), h.mean());
    }
}
