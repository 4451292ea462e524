use crate::error::{Error, Result};

const TOLERANCE: f64 = 1e-12;

/// Finds the root of `f` strictly inside `(0, 1)`.
///
/// A sign change is located on a grid that becomes geometrically finer
/// towards both end points, the bracket is shrunk by bisection and the
/// result polished with Newton steps when `derivative` is given. Newton
/// iterates that leave the bracket are discarded.
pub fn root_in_unit_interval(
    f: impl Fn(f64) -> f64,
    derivative: Option<&dyn Fn(f64) -> f64>,
    name: &'static str,
) -> Result<f64> {
    let mut grid: Vec<f64> = (1..=13).map(|k| 10f64.powi(-k)).collect();
    grid.extend((1..128).map(|k| k as f64 / 128.0));
    grid.extend((3..=13).map(|k| 1.0 - 10f64.powi(-k)));
    grid.sort_by(f64::total_cmp);

    let mut bracket = None;
    let mut prev = (grid[0], f(grid[0]));
    if prev.1 == 0.0 {
        return Ok(prev.0);
    }
    for &x in &grid[1..] {
        let fx = f(x);
        if fx == 0.0 {
            return Ok(x);
        }
        if fx.signum() != prev.1.signum() {
            bracket = Some((prev.0, x, prev.1));
            break;
        }
        prev = (x, fx);
    }
    let (mut lo, mut hi, flo) = bracket.ok_or(Error::NoBracket(name))?;

    for _ in 0..200 {
        if hi - lo < TOLERANCE * 1e-2 {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let mut x = 0.5 * (lo + hi);
    if let Some(df) = derivative {
        for _ in 0..4 {
            let d = df(x);
            if d == 0.0 || !d.is_finite() {
                break;
            }
            let next = x - f(x) / d;
            if !(lo..=hi).contains(&next) {
                break;
            }
            x = next;
        }
    }
    Ok(x)
}
