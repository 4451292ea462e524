use num_complex::Complex64;

use crate::error::{Error, Result};

/// Largest accepted condition estimate after equilibration.
pub const MAX_CONDITION: f64 = 1e12;

/// Solution of a small dense system together with its condition estimate.
#[derive(Debug, Clone)]
pub struct LinearSolution<T> {
    pub x: Vec<T>,
    pub condition: f64,
}

/// Solves `A x = b` for a dense complex system.
///
/// Rows and columns are scaled to unit max-norm first. The 1-norm condition
/// number of the scaled matrix is computed from its explicit inverse (the
/// systems here have at most a few dozen unknowns) and the solve is refused
/// when it exceeds [`MAX_CONDITION`].
pub fn solve_small_linear(a: &[Vec<Complex64>], b: &[Complex64]) -> Result<LinearSolution<Complex64>> {
    let n = b.len();
    if a.len() != n || a.iter().any(|row| row.len() != n) {
        return Err(Error::Numeric(format!("linear system is not {n}x{n}")));
    }
    if n == 0 {
        return Ok(LinearSolution { x: Vec::new(), condition: 1.0 });
    }
    let mut m: Vec<Vec<Complex64>> = a.to_vec();
    let mut rhs = b.to_vec();

    for (row, r) in m.iter_mut().zip(rhs.iter_mut()) {
        let s = row.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if s == 0.0 || !s.is_finite() {
            return Err(Error::NearSingular { condition: f64::INFINITY });
        }
        row.iter_mut().for_each(|v| *v /= s);
        *r /= s;
    }
    let col_scale: Vec<f64> = (0..n).map(|j| m.iter().map(|row| row[j].norm()).fold(0.0, f64::max)).collect();
    if col_scale.contains(&0.0) {
        return Err(Error::NearSingular { condition: f64::INFINITY });
    }
    for row in m.iter_mut() {
        for (v, s) in row.iter_mut().zip(&col_scale) {
            *v /= s;
        }
    }

    let norm1 = one_norm(&m);
    let lu = Lu::factor(m)?;
    let mut inv_norm = 0.0f64;
    for j in 0..n {
        let mut e = vec![Complex64::new(0.0, 0.0); n];
        e[j] = Complex64::new(1.0, 0.0);
        let col = lu.solve(e);
        inv_norm = inv_norm.max(col.iter().map(|v| v.norm()).sum());
    }
    let condition = norm1 * inv_norm;
    if !condition.is_finite() || condition > MAX_CONDITION {
        return Err(Error::NearSingular { condition });
    }
    let y = lu.solve(rhs);
    let x = y.into_iter().zip(&col_scale).map(|(v, s)| v / s).collect();
    Ok(LinearSolution { x, condition })
}

/// Solves a complex system whose solution is known to be real, rejecting the
/// result if any imaginary part exceeds `1e-8` relative to the largest entry.
pub fn solve_real_linear(a: &[Vec<Complex64>], b: &[Complex64]) -> Result<LinearSolution<f64>> {
    let sol = solve_small_linear(a, b)?;
    let scale = sol.x.iter().map(|v| v.norm()).fold(1.0, f64::max);
    if let Some(bad) = sol.x.iter().find(|v| v.im.abs() > 1e-8 * scale) {
        return Err(Error::Numeric(format!("solution has imaginary residue {:e}", bad.im)));
    }
    Ok(LinearSolution { x: sol.x.iter().map(|v| v.re).collect(), condition: sol.condition })
}

fn one_norm(m: &[Vec<Complex64>]) -> f64 {
    let n = m.len();
    (0..n).map(|j| m.iter().map(|row| row[j].norm()).sum::<f64>()).fold(0.0, f64::max)
}

struct Lu {
    m: Vec<Vec<Complex64>>,
    perm: Vec<usize>,
}

impl Lu {
    fn factor(mut m: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = m.len();
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let p = (k..n).max_by(|&i, &j| m[i][k].norm().total_cmp(&m[j][k].norm())).unwrap_or(k);
            if m[p][k].norm() == 0.0 {
                return Err(Error::NearSingular { condition: f64::INFINITY });
            }
            m.swap(k, p);
            perm.swap(k, p);
            let (upper, lower) = m.split_at_mut(k + 1);
            let pivot_row = &upper[k];
            for row in lower {
                let f = row[k] / pivot_row[k];
                row[k] = f;
                for (v, &t) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                    *v -= f * t;
                }
            }
        }
        Ok(Self { m, perm })
    }

    fn solve(&self, b: Vec<Complex64>) -> Vec<Complex64> {
        let n = self.m.len();
        let mut x: Vec<Complex64> = self.perm.iter().map(|&i| b[i]).collect();
        for i in 0..n {
            for j in 0..i {
                let t = x[j];
                x[i] -= self.m[i][j] * t;
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let t = x[j];
                x[i] -= self.m[i][j] * t;
            }
            x[i] /= self.m[i][i];
        }
        x
    }
}
