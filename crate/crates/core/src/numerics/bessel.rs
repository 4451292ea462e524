use crate::error::{invalid, Result};

const MAX_ARGUMENT: f64 = 700.0;

/// Modified Bessel function of the first kind, order one, by its power series
/// `Σ (x/2)^{2m+1} / (m! (m+1)!)`.
///
/// All terms are positive so there is no cancellation; summation stops once
/// a term drops below `1e-16` of the running sum. Arguments above 700
/// overflow `f64` and are rejected.
pub fn bessel_i1(x: f64) -> Result<f64> {
    if !(0.0..=MAX_ARGUMENT).contains(&x) {
        return Err(invalid(format!("bessel_i1 argument {x} outside [0, {MAX_ARGUMENT}]")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let half = 0.5 * x;
    let q = half * half;
    let mut term = half;
    let mut sum = term;
    let mut m = 0.0;
    loop {
        m += 1.0;
        term *= q / (m * (m + 1.0));
        sum += term;
        if term < 1e-16 * sum {
            break;
        }
    }
    Ok(sum)
}

/// `ln I₁(x)` for any `x > 0`: the series below 700, the Hankel asymptotic
/// expansion above.
pub fn ln_bessel_i1(x: f64) -> f64 {
    if x <= 0.0 {
        return f64::NEG_INFINITY;
    }
    if x <= MAX_ARGUMENT {
        // x ≤ 700 is always accepted
        return bessel_i1(x).map(f64::ln).unwrap_or(f64::NAN);
    }
    // I₁(x) ~ eˣ/√(2πx) · (1 − 3/(8x) − 15/(128x²) − 315/(3072x³))
    let inv = 1.0 / x;
    let corr = 1.0 - inv * (3.0 / 8.0 + inv * (15.0 / 128.0 + inv * 315.0 / 3072.0));
    x - 0.5 * (2.0 * std::f64::consts::PI * x).ln() + corr.ln()
}
