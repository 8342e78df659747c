//! Adaptive Gauss–Kronrod (7, 15) quadrature with a global error estimate.

use crate::error::{NevanlinnaError, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_728_8,
];
const WG: [f64; 4] = [0.129_484_966_168_869_7, 0.279_705_391_489_276_7, 0.381_830_050_505_118_9, 0.417_959_183_673_469_4];

/// An integral with its estimated absolute error.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    /// Value.
    pub value: f64,
    /// Estimated absolute error.
    pub error: f64,
}

fn kronrod(f: &dyn Fn(f64) -> f64, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// `∫_a^b f` to the absolute tolerance `tol`, bisecting the interval with
/// the largest error until the total error estimate is below `tol`.
pub fn integrate(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> Result<Estimate> {
    let mut parts = vec![(a, b, kronrod(f, a, b))];
    for _ in 0..4000 {
        let (value, error) = parts.iter().fold((0.0, 0.0), |(v, e), p| (v + p.2 .0, e + p.2 .1));
        if !value.is_finite() {
            return Err(NevanlinnaError::QuadratureFailure("non-finite integrand".into()));
        }
        if error <= tol {
            return Ok(Estimate { value, error });
        }
        let worst = (0..parts.len()).max_by(|&i, &j| parts[i].2 .1.total_cmp(&parts[j].2 .1)).expect("nonempty");
        let (lo, hi, _) = parts.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        parts.push((lo, mid, kronrod(f, lo, mid)));
        parts.push((mid, hi, kronrod(f, mid, hi)));
    }
    let error: f64 = parts.iter().map(|p| p.2 .1).sum();
    Err(NevanlinnaError::QuadratureFailure(format!("error estimate {error:e} above tolerance {tol:e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smooth_and_kinked_integrands() {
        let e = integrate(&|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-12).unwrap();
        assert!((e.value - 2.0).abs() < 1e-12);
        let e = integrate(&|x: f64| (x - 0.3).abs(), 0.0, 1.0, 1e-12).unwrap();
        assert!((e.value - 0.29).abs() < 1e-11);
    }
}
