//! Cancellation-free exponential remainders.

/// `Σ_{n≥k} (−x)^n / n!`, i.e. `e^{−x}` minus its Taylor polynomial of degree
/// `k − 1`, for `x ≥ 0`.
pub(crate) fn exp_neg_tail(x: f64, k: u32) -> f64 {
    if x < 2.0 {
        let mut term = 1.0;
        for n in 1..=k {
            term *= -x / n as f64;
        }
        let mut sum = 0.0;
        let mut n = k;
        loop {
            sum += term;
            n += 1;
            term *= -x / n as f64;
            if term.abs() < 1e-17 * sum.abs() || n > k + 60 {
                return sum;
            }
        }
    }
    let mut poly = 0.0;
    let mut term = 1.0;
    for n in 0..k {
        if n > 0 {
            term *= -x / n as f64;
        }
        poly += term;
    }
    (-x).exp() - poly
}
