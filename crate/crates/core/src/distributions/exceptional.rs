use num_complex::Complex64;

use super::series::exp_neg_tail;
use super::{DistanceDistribution, DistanceKind};
use crate::error::{invalid, Result};
use crate::numerics::exp_divided_difference;

#[derive(Debug, Clone, PartialEq)]
enum Law {
    /// Memoryless base: the exceptional law is the base law.
    Same,
    Deterministic {
        d0: f64,
    },
    Uniform {
        b: f64,
    },
    /// Phase mixture reweighted by `p_j / (λ + μ_j)`.
    Hyper(DistanceDistribution),
}

/// Law of the first service gap of a busy period, `Z = X − Y | Y < X`, with
/// `X` a server gap and `Y ~ Exp(λ)` the residual to the first user.
#[derive(Debug, Clone, PartialEq)]
pub struct ExceptionalDistribution {
    base: DistanceDistribution,
    lambda: f64,
    law: Law,
}

/// Builds the exceptional-service law for server gaps `base` and Poisson users
/// of rate `lambda`.
pub fn exceptional(base: &DistanceDistribution, lambda: f64) -> Result<ExceptionalDistribution> {
    ExceptionalDistribution::new(base, lambda)
}

impl ExceptionalDistribution {
    pub fn new(base: &DistanceDistribution, lambda: f64) -> Result<Self> {
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(invalid(format!("arrival rate must be positive, got {lambda}")));
        }
        let law = match base.kind() {
            DistanceKind::Exponential { .. } => Law::Same,
            DistanceKind::Deterministic { value } => Law::Deterministic { d0: *value },
            DistanceKind::Uniform { max } => Law::Uniform { b: *max },
            DistanceKind::HyperExponential { probs, rates } => {
                let w: Vec<f64> = probs.iter().zip(rates).map(|(p, r)| p / (lambda + r)).collect();
                let total: f64 = w.iter().sum();
                let mut probs: Vec<f64> = w.iter().map(|x| x / total).collect();
                // absorb rounding so the phase weights sum to one exactly
                let rest: f64 = probs[1..].iter().sum();
                probs[0] = 1.0 - rest;
                Law::Hyper(DistanceDistribution::hyperexponential(probs, rates.clone())?)
            }
        };
        Ok(Self { base: base.clone(), lambda, law })
    }

    /// The exceptional law equal to `base` itself, for models where the first
    /// gap of a busy period is not special.
    pub fn identical(base: &DistanceDistribution) -> Self {
        Self { base: base.clone(), lambda: f64::NAN, law: Law::Same }
    }

    pub fn base(&self) -> &DistanceDistribution {
        &self.base
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// True when the exceptional law coincides with the base law.
    pub fn is_identical_to_base(&self) -> bool {
        self.law == Law::Same
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let l = self.lambda;
        match &self.law {
            Law::Same => self.base.cdf(x),
            Law::Hyper(h) => h.cdf(x),
            Law::Deterministic { d0 } => {
                if x >= *d0 {
                    1.0
                } else {
                    ((-l * (d0 - x)).exp() - (-l * d0).exp()) / -(-l * d0).exp_m1()
                }
            }
            Law::Uniform { b } => {
                if x >= *b {
                    1.0
                } else {
                    (l * x + (-l * b).exp() - (-l * (b - x)).exp()) / exp_neg_tail(l * b, 2)
                }
            }
        }
    }

    pub fn density(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        let l = self.lambda;
        match &self.law {
            Law::Same => hyper_or_exp_density(&self.base, x),
            Law::Hyper(h) => hyper_or_exp_density(h, x),
            Law::Deterministic { d0 } => {
                if x >= *d0 {
                    0.0
                } else {
                    l * (-l * (d0 - x)).exp() / -(-l * d0).exp_m1()
                }
            }
            Law::Uniform { b } => {
                if x > *b {
                    0.0
                } else {
                    -l * (-l * (b - x)).exp_m1() / exp_neg_tail(l * b, 2)
                }
            }
        }
    }

    /// `α_Z`
    pub fn mean(&self) -> f64 {
        let l = self.lambda;
        match &self.law {
            Law::Same => self.base.mean(),
            Law::Hyper(h) => h.mean(),
            Law::Deterministic { d0 } => {
                let x = l * d0;
                exp_neg_tail(x, 2) / (l * -exp_neg_tail(x, 1))
            }
            Law::Uniform { b } => {
                let x = l * b;
                -exp_neg_tail(x, 3) / (l * exp_neg_tail(x, 2))
            }
        }
    }

    /// `E[Z²]`
    pub fn second_moment(&self) -> f64 {
        let l = self.lambda;
        match &self.law {
            Law::Same => self.base.second_moment(),
            Law::Hyper(h) => h.second_moment(),
            Law::Deterministic { d0 } => {
                let x = l * d0;
                2.0 * exp_neg_tail(x, 3) / (l * l * exp_neg_tail(x, 1))
            }
            Law::Uniform { b } => {
                let x = l * b;
                2.0 * exp_neg_tail(x, 4) / (l * l * exp_neg_tail(x, 2))
            }
        }
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.second_moment() - m * m
    }

    /// `E[e^{−sZ}]` for complex `s` with `Re s ≥ 0`.
    pub fn lst_complex(&self, s: Complex64) -> Complex64 {
        let l = self.lambda;
        match &self.law {
            Law::Same => self.base.lst_complex(s),
            Law::Hyper(h) => h.lst_complex(s),
            Law::Deterministic { d0 } => {
                // λ c_λ (e^{−s d0} − e^{−λ d0}) / (λ − s)
                let c = 1.0 / -exp_neg_tail(l * d0, 1);
                l * c * d0 * exp_divided_difference(-s * *d0, Complex64::new(-l * d0, 0.0))
            }
            Law::Uniform { b } => {
                // λ k_λ [(1 − e^{−sb})/s − (e^{−sb} − e^{−λb})/(λ − s)]
                let k = 1.0 / exp_neg_tail(l * b, 2);
                let zero = Complex64::new(0.0, 0.0);
                let first = exp_divided_difference(zero, -s * *b);
                let second = exp_divided_difference(-s * *b, Complex64::new(-l * b, 0.0));
                l * k * b * (first - second)
            }
        }
    }

    pub fn lst(&self, s: f64) -> f64 {
        if s == 0.0 {
            return 1.0;
        }
        self.lst_complex(Complex64::new(s, 0.0)).re
    }

    /// Point beyond which `1 − F_Z < 1e-10`.
    pub fn support_bound(&self) -> f64 {
        match &self.law {
            Law::Deterministic { d0 } => *d0,
            Law::Uniform { b } => *b,
            Law::Same | Law::Hyper(_) => {
                let d = match &self.law {
                    Law::Hyper(h) => h,
                    _ => &self.base,
                };
                let slowest = match d.kind() {
                    DistanceKind::Exponential { rate } => *rate,
                    DistanceKind::HyperExponential { rates, .. } => rates.iter().copied().fold(f64::INFINITY, f64::min),
                    // other bases never reach this arm
                    _ => 1.0 / d.mean(),
                };
                23.1 / slowest
            }
        }
    }

    /// `F_Z(x)` evaluated from the difference-distribution transform
    /// `(λ e^{λx}(A − B(x)) − λA) / (1 − λA)` with `B(x) = ∫₀ˣ F_X(z) e^{−λz} dz`
    /// and `A = B(∞)`.
    ///
    /// Loses accuracy once `e^{λx}` is large; intended as an independent check
    /// of [`cdf`](Self::cdf).
    pub fn transform_cdf(&self, x: f64) -> f64 {
        let l = self.lambda;
        let a = self.transform_a();
        (l * (l * x).exp() * (a - self.transform_b(x)) - l * a) / (1.0 - l * a)
    }

    /// Density counterpart of [`transform_cdf`](Self::transform_cdf).
    pub fn transform_density(&self, x: f64) -> f64 {
        let l = self.lambda;
        let a = self.transform_a();
        (l * l * (l * x).exp() * (a - self.transform_b(x)) - l * self.base.cdf(x)) / (1.0 - l * a)
    }

    fn transform_a(&self) -> f64 {
        let l = self.lambda;
        match self.base.kind() {
            DistanceKind::Exponential { rate } => 1.0 / l - 1.0 / (l + rate),
            DistanceKind::Uniform { max } => -(-l * max).exp_m1() / (l * l * max),
            DistanceKind::Deterministic { value } => (-l * value).exp() / l,
            DistanceKind::HyperExponential { probs, rates } => {
                1.0 / l - probs.iter().zip(rates).map(|(p, r)| p / (l + r)).sum::<f64>()
            }
        }
    }

    fn transform_b(&self, x: f64) -> f64 {
        let l = self.lambda;
        match self.base.kind() {
            DistanceKind::Exponential { rate } => -(-l * x).exp_m1() / l + (-(l + rate) * x).exp_m1() / (l + rate),
            DistanceKind::Uniform { max } => {
                if x >= *max {
                    -(-l * max).exp_m1() / (l * l * max) - (-l * x).exp() / l
                } else {
                    (1.0 - (-l * x).exp() * (1.0 + l * x)) / (l * l * max)
                }
            }
            DistanceKind::Deterministic { value } => {
                if x >= *value {
                    ((-l * value).exp() - (-l * x).exp()) / l
                } else {
                    0.0
                }
            }
            DistanceKind::HyperExponential { probs, rates } => {
                -(-l * x).exp_m1() / l
                    + probs.iter().zip(rates).map(|(p, r)| p * (-(l + r) * x).exp_m1() / (l + r)).sum::<f64>()
            }
        }
    }
}

fn hyper_or_exp_density(d: &DistanceDistribution, x: f64) -> f64 {
    match d.kind() {
        DistanceKind::Exponential { rate } => rate * (-rate * x).exp(),
        DistanceKind::HyperExponential { probs, rates } => {
            probs.iter().zip(rates).map(|(p, r)| p * r * (-r * x).exp()).sum()
        }
        // only memoryless laws are stored in these arms
        _ => f64::NAN,
    }
}
