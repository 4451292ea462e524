//! Numerical kernels shared by the analytic models.

mod bessel;
mod disk;
mod linear;
mod poly;
mod quadrature;
mod scalar;

pub use bessel::{bessel_i1, ln_bessel_i1};
pub use disk::{companion_roots, unit_disk_roots, UnitDiskRoots, CLUSTER_TOLERANCE};
pub use linear::{solve_real_linear, solve_small_linear, LinearSolution, MAX_CONDITION};
pub use poly::Polynomial;
pub use quadrature::{integrate, integrate_pieces, integrate_to_infinity};
pub use scalar::root_in_unit_interval;

use num_complex::Complex64;

/// `(e^a − e^b) / (a − b)`, continuous across `a = b`.
pub fn exp_divided_difference(a: Complex64, b: Complex64) -> Complex64 {
    let d = a - b;
    if d.norm() < 1e-3 {
        // e^b (1 + d/2 + d²/6 + d³/24 + d⁴/120 + d⁵/720)
        let series =
            Complex64::new(1.0, 0.0) + d * (0.5 + d * (1.0 / 6.0 + d * (1.0 / 24.0 + d * (1.0 / 120.0 + d / 720.0))));
        b.exp() * series
    } else {
        (a.exp() - b.exp()) / d
    }
}

/// Central-difference derivative of a complex function.
pub(crate) fn complex_derivative(f: &dyn Fn(Complex64) -> Complex64, z: Complex64) -> Complex64 {
    let h = 1e-6 * (1.0 + z.norm());
    (f(z + h) - f(z - h)) / (2.0 * h)
}
