use crate::error::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7].
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const MAX_INTERVALS: usize = 2000;

fn kronrod(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for j in 0..7 {
        let dx = half * XGK[j];
        let s = f(center - dx) + f(center + dx);
        k += WGK[j] * s;
        if j % 2 == 1 {
            g += WG[j / 2] * s;
        }
    }
    (k * half, ((k - g) * half).abs())
}

/// Adaptive Gauss–Kronrod 7–15 quadrature of `f` over `[a, b]` to absolute
/// tolerance `tol` (or relative `tol` for large integrals).
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (first, err) = kronrod(f, a, b);
    let mut pieces = vec![(a, b, first, err)];
    loop {
        let total: f64 = pieces.iter().map(|p| p.2).sum();
        let error: f64 = pieces.iter().map(|p| p.3).sum();
        if !total.is_finite() {
            return Err(Error::Numeric("integrand is not finite".into()));
        }
        if error <= tol.max(tol * total.abs()) {
            return Ok(total);
        }
        if pieces.len() >= MAX_INTERVALS {
            return Err(Error::NonConvergence { what: "adaptive quadrature", iterations: MAX_INTERVALS });
        }
        let worst = pieces.iter().enumerate().max_by(|x, y| x.1 .3.total_cmp(&y.1 .3)).map(|(i, _)| i).unwrap_or(0);
        let (lo, hi, _, _) = pieces.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            // interval exhausted at machine precision
            return Ok(total);
        }
        let (l, le) = kronrod(f, lo, mid);
        let (r, re) = kronrod(f, mid, hi);
        pieces.push((lo, mid, l, le));
        pieces.push((mid, hi, r, re));
    }
}

/// Integrates over consecutive breakpoints, where `f` may have kinks.
pub fn integrate_pieces(f: &dyn Fn(f64) -> f64, breakpoints: &[f64], tol: f64) -> Result<f64> {
    let n = breakpoints.len().saturating_sub(1).max(1) as f64;
    breakpoints.windows(2).map(|w| integrate(f, w[0], w[1], tol / n)).sum()
}

/// Integrates over `[a, ∞)` on intervals of doubling length starting at
/// `scale`, stopping once three successive intervals contribute less than
/// `tol`.
pub fn integrate_to_infinity(f: &dyn Fn(f64) -> f64, a: f64, scale: f64, tol: f64) -> Result<f64> {
    let mut lo = a;
    let mut width = scale;
    let mut total = 0.0;
    let mut quiet = 0;
    for _ in 0..200 {
        let part = integrate(f, lo, lo + width, tol * 1e-2)?;
        total += part;
        if part.abs() < tol.max(tol * total.abs()) {
            quiet += 1;
            if quiet >= 3 {
                return Ok(total);
            }
        } else {
            quiet = 0;
        }
        lo += width;
        width *= 2.0;
    }
    Err(Error::NonConvergence { what: "semi-infinite quadrature", iterations: 200 })
}
