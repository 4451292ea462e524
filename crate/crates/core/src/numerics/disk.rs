use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{complex_derivative, Polynomial};
use crate::error::{Error, Result};

/// Roots closer than this are treated as one repeated root.
pub const CLUSTER_TOLERANCE: f64 = 1e-6;

const FIXED_POINT_TOL: f64 = 1e-13;
const FIXED_POINT_CAP: usize = 10_000;
const RESIDUAL_TOL: f64 = 1e-9;
const DISK_SLACK: f64 = 1e-9;
const SAME_ROOT: f64 = 1e-10;

/// The `c` roots of `z^c = A(z)` in the closed unit disk, with `z = 1` last.
#[derive(Debug, Clone)]
pub struct UnitDiskRoots {
    pub roots: Vec<Complex64>,
    pub max_residual: f64,
}

impl UnitDiskRoots {
    /// Roots other than `z = 1`.
    pub fn inner(&self) -> &[Complex64] {
        &self.roots[..self.roots.len() - 1]
    }
}

/// Finds the `c` roots of `z^c − A(z)` in `|z| ≤ 1`, where `A` is a
/// probability generating function with `A(1) = 1`.
///
/// Each branch `k` runs the iteration `z ← |A(z)|^{1/c} e^{i(arg A(z) + 2πk)/c}`
/// from `0.5 e^{2πik/c}` and is polished by Newton steps. If that does not
/// yield `c` distinct roots and `rational` is given (a polynomial whose roots
/// in the disk coincide with the wanted ones), its companion eigenvalues are
/// used instead.
pub fn unit_disk_roots(
    c: usize,
    a: &dyn Fn(Complex64) -> Complex64,
    rational: Option<&Polynomial>,
) -> Result<UnitDiskRoots> {
    if c == 0 {
        return Err(Error::InvalidParameter("capacity must be positive".into()));
    }
    let f = |z: Complex64| z.powu(c as u32) - a(z);

    let iterated = fixed_point_roots(c, a, &f);
    let found = match (iterated, rational) {
        (Ok(r), _) => r,
        (Err(e), None) => return Err(e),
        (Err(_), Some(p)) => {
            let candidates = companion_roots(p)?;
            let mut roots = Vec::new();
            for z in candidates {
                if z.norm() <= 1.0 + 1e-6 {
                    let z = newton(&f, z);
                    if z.norm() <= 1.0 + DISK_SLACK {
                        roots.push(z);
                    }
                }
            }
            distinct(roots, c)?
        }
    };
    finish(found, c, &f)
}

fn fixed_point_roots(
    c: usize,
    a: &dyn Fn(Complex64) -> Complex64,
    f: &dyn Fn(Complex64) -> Complex64,
) -> Result<Vec<Complex64>> {
    let cf = c as f64;
    let mut roots = Vec::with_capacity(c);
    for k in 0..c {
        let shift = 2.0 * PI * k as f64;
        let mut z = Complex64::from_polar(0.5, shift / cf);
        let mut converged = false;
        for _ in 0..FIXED_POINT_CAP {
            let log = continued_log(a, z);
            let next = ((log + Complex64::new(0.0, shift)) / cf).exp();
            let step = (next - z).norm();
            z = next;
            if step < FIXED_POINT_TOL {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NonConvergence { what: "unit-disk root iteration", iterations: FIXED_POINT_CAP });
        }
        let z = newton(f, z);
        if z.norm() > 1.0 + DISK_SLACK {
            return Err(Error::RootCount { expected: c, found: k });
        }
        roots.push(z);
    }
    distinct(roots, c)
}

/// `log A(z)` continued from the real value at 0 along the segment `[0, z]`,
/// so that `exp(log A / c)` is analytic in the disk even when `arg A` winds
/// past `±π` (large arrival rates).
fn continued_log(a: &dyn Fn(Complex64) -> Complex64, z: Complex64) -> Complex64 {
    let start = a(Complex64::new(0.0, 0.0));
    let end = a(z);
    let mut steps = 8;
    loop {
        let mut prev = start;
        let mut arg = start.arg();
        let mut smooth = true;
        for j in 1..=steps {
            let cur = if j == steps { end } else { a(z * (j as f64 / steps as f64)) };
            let d = (cur / prev).arg();
            smooth &= d.abs() < 0.5;
            arg += d;
            prev = cur;
        }
        if smooth || steps >= 4096 {
            return Complex64::new(end.norm().ln(), arg);
        }
        steps *= 2;
    }
}

/// Merges exact duplicates and rejects clusters.
fn distinct(roots: Vec<Complex64>, c: usize) -> Result<Vec<Complex64>> {
    let mut out: Vec<Complex64> = Vec::with_capacity(roots.len());
    for z in roots {
        if let Some(prev) = out.iter().find(|w| (*w - z).norm() < CLUSTER_TOLERANCE) {
            if (prev - z).norm() >= SAME_ROOT {
                return Err(Error::RootMultiplicity { re: z.re, im: z.im });
            }
            continue;
        }
        out.push(z);
    }
    if out.len() != c {
        return Err(Error::RootCount { expected: c, found: out.len() });
    }
    Ok(out)
}

fn finish(mut roots: Vec<Complex64>, c: usize, f: &dyn Fn(Complex64) -> Complex64) -> Result<UnitDiskRoots> {
    let one = Complex64::new(1.0, 0.0);
    let idx = roots
        .iter()
        .enumerate()
        .min_by(|(_, x), (_, y)| (*x - one).norm().total_cmp(&(*y - one).norm()))
        .map(|(i, _)| i)
        .ok_or(Error::RootCount { expected: c, found: 0 })?;
    if (roots[idx] - one).norm() > 1e-8 {
        return Err(Error::Numeric("z = 1 is not among the computed roots".into()));
    }
    roots.remove(idx);
    for (i, z) in roots.iter().enumerate() {
        if (z - one).norm() < CLUSTER_TOLERANCE {
            return Err(Error::RootMultiplicity { re: z.re, im: z.im });
        }
        for w in &roots[i + 1..] {
            if (z - w).norm() < CLUSTER_TOLERANCE {
                return Err(Error::RootMultiplicity { re: z.re, im: z.im });
            }
        }
    }
    roots.push(one);
    let max_residual = roots.iter().map(|&z| f(z).norm()).fold(0.0, f64::max);
    if max_residual > RESIDUAL_TOL {
        return Err(Error::Numeric(format!("root residual {max_residual:e} too large")));
    }
    Ok(UnitDiskRoots { roots, max_residual })
}

fn newton(f: &dyn Fn(Complex64) -> Complex64, mut z: Complex64) -> Complex64 {
    for _ in 0..8 {
        let fz = f(z);
        let d = complex_derivative(f, z);
        if d.norm() == 0.0 || !d.is_finite() {
            break;
        }
        let step = fz / d;
        let next = z - step;
        if !next.is_finite() || f(next).norm() > fz.norm() {
            break;
        }
        z = next;
        if step.norm() < 1e-15 {
            break;
        }
    }
    z
}

/// All complex roots of a polynomial, via the eigenvalues of its companion
/// matrix.
pub fn companion_roots(p: &Polynomial) -> Result<Vec<Complex64>> {
    let c = p.coeffs();
    let n = p.degree();
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = c[n];
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -c[i] / lead;
    }
    let eig = m.complex_eigenvalues();
    if eig.iter().any(|z| !z.is_finite()) {
        return Err(Error::Numeric("companion eigenvalues are not finite".into()));
    }
    Ok(eig.iter().copied().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp_lst(lambda: f64, mu: f64) -> impl Fn(Complex64) -> Complex64 {
        move |z| Complex64::new(mu, 0.0) / (mu + lambda * (1.0 - z))
    }

    #[test]
    fn exponential_two_roots() {
        // z²(1.5 − 0.5z) = 1 has roots 1, 1 ± √3; only 1 − √3 is inside.
        let a = exp_lst(0.5, 1.0);
        let r = unit_disk_roots(2, &a, None).unwrap();
        assert_eq!(r.roots.len(), 2);
        assert!((r.roots[1] - 1.0).norm() < 1e-14);
        assert!((r.roots[0] - (1.0 - 3f64.sqrt())).norm() < 1e-12);
    }

    #[test]
    fn companion_matches_known_roots() {
        // (z − 1)(z − 2)(z + 3) = z³ − 7z + 6
        let p = Polynomial::new(vec![6.0, -7.0, 0.0, 1.0]);
        let mut r: Vec<f64> = companion_roots(&p).unwrap().iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        for (x, t) in r.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((x - t).abs() < 1e-12);
        }
    }

    #[test]
    fn rational_route_agrees_with_iteration() {
        let (lambda, mu, c) = (2.4, 1.0, 4);
        let a = exp_lst(lambda, mu);
        // z^c (μ + λ − λz) − μ
        let mut coeffs = vec![0.0; c + 2];
        coeffs[0] = -mu;
        coeffs[c] = mu + lambda;
        coeffs[c + 1] = -lambda;
        let p = Polynomial::new(coeffs);
        let direct = unit_disk_roots(c, &a, None).unwrap();
        let mut companion: Vec<Complex64> =
            companion_roots(&p).unwrap().into_iter().filter(|z| z.norm() <= 1.0 + 1e-9).collect();
        assert_eq!(companion.len(), c);
        for z in direct.roots {
            let (i, _) =
                companion.iter().enumerate().min_by(|x, y| (x.1 - z).norm().total_cmp(&(y.1 - z).norm())).unwrap();
            assert!((companion.remove(i) - z).norm() < 1e-9);
        }
    }

    #[test]
    fn deterministic_many_roots() {
        let (lambda, c) = (0.8, 64);
        let a = move |z: Complex64| (-lambda * (1.0 - z)).exp();
        let r = unit_disk_roots(c, &a, None).unwrap();
        assert_eq!(r.roots.len(), c);
        assert!(r.max_residual < 1e-9);
        assert!(r.roots.iter().all(|z| z.norm() <= 1.0 + 1e-9));
    }

    #[test]
    fn deterministic_heavy_batches() {
        // arg A(z) = λ Im z winds well past π
        let (lambda, c) = (12.8, 16);
        let a = move |z: Complex64| (-lambda * (1.0 - z)).exp();
        let r = unit_disk_roots(c, &a, None).unwrap();
        assert_eq!(r.roots.len(), c);
        assert!(r.max_residual < 1e-9);
    }

    #[test]
    fn near_critical_load_is_flagged() {
        // ρ → c pushes a second root onto z = 1.
        let a = exp_lst(1.999_999_9, 1.0);
        let err = unit_disk_roots(2, &a, None).unwrap_err();
        assert!(matches!(err, Error::RootMultiplicity { .. } | Error::NonConvergence { .. } | Error::RootCount { .. }));
    }
}
