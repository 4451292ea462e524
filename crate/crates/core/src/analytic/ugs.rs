use crate::error::Result;
use crate::numerics::{integrate, ln_bessel_i1};

/// Density of the UGS request distance for Poisson users (`λ`) and Poisson
/// unit-capacity servers (`μ`), `λ < μ`:
/// `f(x) = e^{−(λ+μ)x} I₁(2x√(λμ)) / (x√ρ)`, the busy-period density of the
/// corresponding M/M/1 queue. `f(0⁺) = μ`.
pub fn ugs_distance_density(lambda: f64, mu: f64, x: f64) -> f64 {
    if x < 0.0 {
        return 0.0;
    }
    if x == 0.0 {
        return mu;
    }
    let rho = lambda / mu;
    (ln_bessel_i1(2.0 * x * (lambda * mu).sqrt()) - (lambda + mu) * x).exp() / (x * rho.sqrt())
}

/// `P(D ≤ x)` for the density above, by quadrature.
pub fn ugs_distance_cdf(lambda: f64, mu: f64, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    // the density has a long tail; split so each piece is smooth on its scale
    let f = |t: f64| ugs_distance_density(lambda, mu, t);
    let mut total = 0.0;
    let mut lo = 0.0;
    let mut width = 1.0 / mu;
    while lo < x {
        let hi = (lo + width).min(x);
        total += integrate(&f, lo, hi, 1e-13)?;
        lo = hi;
        width *= 2.0;
    }
    Ok(total.min(1.0))
}
