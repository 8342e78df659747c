//! Rational curves `[F_0 : … : F_n]` in `ℙ_n`, their characteristic
//! function and the comparison with the characteristics of `F_j/F_0`.

use std::f64::consts::TAU;

use core_poly::{Scalar, UniPoly};
use num::complex::Complex64;
use num::{One, Zero};
use rand::Rng;
use serde_json::{json, Value};

use crate::error::{NevanlinnaError, Result};
use crate::functions::{characteristic, eval_complex, Normalization, RationalFunction, QUADRATURE_TOLERANCE};
use crate::quadrature::{integrate, Estimate};

/// A holomorphic map `ℂ → ℙ_n` given by coprime polynomial components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalCurve {
    /// `F_0, …, F_n`.
    pub components: Vec<UniPoly>,
}

impl RationalCurve {
    /// Checks that the components are not all zero and share no root.
    pub fn new(components: Vec<UniPoly>) -> Result<RationalCurve> {
        if components.len() < 2 {
            return Err(NevanlinnaError::Degenerate("a curve needs at least two components".into()));
        }
        let g = components.iter().fold(UniPoly::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return Err(NevanlinnaError::Degenerate("all components vanish".into()));
        }
        if g.degree().unwrap_or(0) > 0 {
            return Err(NevanlinnaError::CommonRoot(format!("{g}")));
        }
        Ok(RationalCurve { components })
    }

    /// Clears the denominators of `[num_0/den_0 : … : num_n/den_n]` and
    /// removes the common factor of the numerators.
    pub fn from_ratios(ratios: &[(UniPoly, UniPoly)]) -> Result<RationalCurve> {
        let mut lcm = UniPoly::constant(Scalar::one());
        for (_, den) in ratios {
            if den.is_zero() {
                return Err(NevanlinnaError::Degenerate("zero denominator".into()));
            }
            let g = lcm.gcd(den);
            lcm = lcm.mul(den).div_rem(&g).0;
        }
        let cleared: Vec<UniPoly> = ratios.iter().map(|(num, den)| num.mul(&lcm.div_rem(den).0)).collect();
        let g = cleared.iter().fold(UniPoly::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return Err(NevanlinnaError::Degenerate("all components vanish".into()));
        }
        RationalCurve::new(cleared.iter().map(|c| c.div_rem(&g).0).collect())
    }

    /// Target dimension `n`.
    pub fn n(&self) -> usize {
        self.components.len() - 1
    }

    /// `F_j/F_0` for `j = 1..n`.
    pub fn affine_functions(&self) -> Result<Vec<RationalFunction>> {
        if self.components[0].is_zero() {
            return Err(NevanlinnaError::Degenerate("F_0 vanishes identically".into()));
        }
        self.components[1..].iter().map(|c| RationalFunction::new(c.clone(), self.components[0].clone())).collect()
    }

    fn log_norm_squared(&self, z: Complex64) -> f64 {
        self.components.iter().map(|c| eval_complex(c, z).norm_sqr()).sum::<f64>().ln()
    }

    /// `(1/4π)∫_0^{2π} log Σ|F_k(ρe^{iθ})|² dθ`.
    pub fn circle_mean(&self, rho: f64) -> Result<Estimate> {
        if rho == 0.0 {
            return Ok(Estimate { value: 0.5 * self.log_norm_squared(Complex64::zero()), error: 0.0 });
        }
        let e = integrate(&|t: f64| self.log_norm_squared(Complex64::from_polar(rho, t)), 0.0, TAU, QUADRATURE_TOLERANCE)?;
        Ok(Estimate { value: e.value / (2.0 * TAU), error: e.error / (2.0 * TAU) })
    }
}

/// `T(r, r1, φ)`: the circle mean of `log Σ|F_k|²` at `r` minus at `r1`,
/// which equals the twice integrated Laplacian of `log Σ|F_k|²`.
pub fn characteristic_map(phi: &RationalCurve, r: f64, r1: f64) -> Result<Estimate> {
    if !(r.is_finite() && r1 >= 0.0 && r > r1) {
        return Err(NevanlinnaError::InvalidRadius(format!("r = {r}, r1 = {r1}")));
    }
    let outer = phi.circle_mean(r)?;
    let inner = phi.circle_mean(r1)?;
    Ok(Estimate { value: outer.value - inner.value, error: outer.error + inner.error })
}

/// Both comparison inequalities over a list of radii.
#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonReport {
    /// Radii.
    pub radii: Vec<f64>,
    /// Per radius: `T(r, φ)` followed by `T(r, F_j/F_0)` for `j = 1..n`.
    pub values: Vec<Vec<f64>>,
    /// The smallest constants `C`, `C′` making
    /// `max_j T(r, F_j/F_0) ≤ T(r, φ) + C` and `T(r, φ) ≤ Σ_j T(r, F_j/F_0) + C′`
    /// hold on all radii.
    pub fitted_constants: [f64; 2],
    /// The largest amount by which the constants fitted at the smallest
    /// radius are exceeded at larger radii.
    pub max_violation: f64,
}

impl ComparisonReport {
    /// Whether the constants fitted at the smallest radius hold at every
    /// radius up to `tolerance`.
    pub fn holds(&self, tolerance: f64) -> bool {
        self.max_violation <= tolerance
    }

    /// `{radii, values, fitted_constants, max_violation}`.
    pub fn to_json(&self) -> Value {
        json!({
            "radii": self.radii,
            "values": self.values,
            "fitted_constants": self.fitted_constants,
            "max_violation": self.max_violation,
        })
    }
}

/// Evaluates `T(r, F_j/F_0) ≤ T(r, φ) + C` and
/// `T(r, φ) ≤ Σ_j T(r, F_j/F_0) + C′` at the given radii, all with base
/// radius `r1`.
pub fn compare_characteristics(phi: &RationalCurve, radii: &[f64], r1: f64, norm: Normalization) -> Result<ComparisonReport> {
    let affine = phi.affine_functions()?;
    let mut radii = radii.to_vec();
    radii.sort_by(f64::total_cmp);
    let mut values = Vec::new();
    let mut first = Vec::new();
    let mut second = Vec::new();
    for &r in &radii {
        let t_phi = characteristic_map(phi, r, r1)?.value;
        let mut row = vec![t_phi];
        for f in &affine {
            row.push(characteristic(f, r, Some(r1), norm)?.value);
        }
        let max_j = row[1..].iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let sum_j: f64 = row[1..].iter().sum();
        first.push(max_j - t_phi);
        second.push(t_phi - sum_j);
        values.push(row);
    }
    let fit = |d: &[f64]| d.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let growth = |d: &[f64]| d.iter().map(|x| x - d[0]).fold(0.0, f64::max);
    Ok(ComparisonReport {
        fitted_constants: [fit(&first), fit(&second)],
        max_violation: growth(&first).max(growth(&second)),
        radii,
        values,
    })
}

/// The gaps `T(r, F) − T(r, 1/F)` over the radii with their mean and the
/// largest deviation from it.
#[derive(Clone, Debug, PartialEq)]
pub struct FirstMainTheoremReport {
    /// `T(r, F) − T(r, 1/F)` per radius.
    pub gaps: Vec<f64>,
    /// Mean gap.
    pub fitted_constant: f64,
    /// `max |gap − mean|`.
    pub residual: f64,
}

/// Checks that `T(r, F) − T(r, 1/F)` is constant in `r`.
pub fn first_main_theorem_gap(f: &RationalFunction, radii: &[f64], r1: Option<f64>, norm: Normalization) -> Result<FirstMainTheoremReport> {
    let inverse = f.reciprocal()?;
    let mut gaps = Vec::new();
    for &r in radii {
        gaps.push(characteristic(f, r, r1, norm)?.value - characteristic(&inverse, r, r1, norm)?.value);
    }
    let fitted_constant = gaps.iter().sum::<f64>() / gaps.len().max(1) as f64;
    let residual = gaps.iter().map(|g| (g - fitted_constant).abs()).fold(0.0, f64::max);
    Ok(FirstMainTheoremReport { gaps, fitted_constant, residual })
}

fn random_root(rng: &mut impl Rng) -> Scalar {
    Scalar::new(rng.gen_range(-8i64..=8).into(), rng.gen_range(4i64..=8).into())
}

/// A polynomial `c·Π(ζ − a_i)` with `0 ≤ degree ≤ max_degree`, rational
/// roots of modulus at most 2 and a nonzero integer leading coefficient.
pub fn random_polynomial(max_degree: usize, rng: &mut impl Rng) -> UniPoly {
    let lead = loop {
        let c: i64 = rng.gen_range(-3..=3);
        if c != 0 {
            break c;
        }
    };
    let degree = rng.gen_range(0..=max_degree);
    (0..degree).fold(UniPoly::constant(Scalar::from_integer(lead.into())), |acc, _| {
        acc.mul(&UniPoly::new(vec![-random_root(rng), Scalar::one()]))
    })
}

/// A random nonconstant curve in `ℙ_n` with coprime components of degree
/// at most `max_degree`.
pub fn random_rational_curve(n: usize, max_degree: usize, rng: &mut impl Rng) -> RationalCurve {
    loop {
        let components: Vec<UniPoly> = (0..=n).map(|_| random_polynomial(max_degree, rng)).collect();
        if let Ok(curve) = RationalCurve::new(components) {
            if curve.components.iter().any(|c| c.degree().unwrap_or(0) > 0) {
                return curve;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_characteristic() {
        let line = RationalCurve::new(vec![UniPoly::from_ints(&[1]), UniPoly::from_ints(&[0, 1])]).unwrap();
        for r in [10.0, 100.0, 1000.0] {
            let t = characteristic_map(&line, r, 0.0).unwrap();
            assert!((t.value - 0.5 * (1.0 + r * r).ln()).abs() < 1e-10);
        }
        let constant = RationalCurve::new(vec![UniPoly::from_ints(&[2]), UniPoly::from_ints(&[3])]).unwrap();
        assert!(characteristic_map(&constant, 5.0, 1.0).unwrap().value.abs() < 1e-12);
    }

    #[test]
    fn curve_validation() {
        let shared = RationalCurve::new(vec![UniPoly::from_ints(&[-1, 1]), UniPoly::from_ints(&[-1, 0, 1])]);
        assert!(matches!(shared, Err(NevanlinnaError::CommonRoot(_))));
        let cleared = RationalCurve::from_ratios(&[
            (UniPoly::from_ints(&[1]), UniPoly::from_ints(&[1])),
            (UniPoly::from_ints(&[0, 1]), UniPoly::from_ints(&[1])),
            (UniPoly::from_ints(&[1]), UniPoly::from_ints(&[-3, 1])),
        ])
        .unwrap();
        assert_eq!(cleared.components, vec![UniPoly::from_ints(&[-3, 1]), UniPoly::from_ints(&[0, -3, 1]), UniPoly::from_ints(&[1])]);
    }
}
