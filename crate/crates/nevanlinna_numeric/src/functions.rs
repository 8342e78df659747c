//! Rational functions of one variable, their counting functions and
//! characteristic functions.

use std::f64::consts::TAU;

use core_poly::scalar::to_f64;
use core_poly::{Scalar, UniPoly};
use num::complex::Complex64;
use num::{One, Zero};

use crate::error::{NevanlinnaError, Result};
use crate::quadrature::{integrate, Estimate};
use crate::roots::isolate_roots;

/// Absolute tolerance of the circle integrals.
pub const QUADRATURE_TOLERANCE: f64 = 1e-11;

/// A reduced quotient `num/den` with a monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    /// Numerator.
    pub num: UniPoly,
    /// Monic denominator, coprime to the numerator.
    pub den: UniPoly,
}

/// A target value of a function.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Target {
    /// A finite value.
    Finite(Scalar),
    /// The value `∞`.
    Infinity,
}

/// The constant in front of the circle average of `log⁺|F|`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    /// `1/(4π)`.
    #[default]
    FourPi,
    /// `1/(2π)`, for which the First Main Theorem holds.
    Standard,
}

impl Normalization {
    /// The constant `c_T`.
    pub fn constant(self) -> f64 {
        match self {
            Normalization::FourPi => 1.0 / (2.0 * TAU),
            Normalization::Standard => 1.0 / TAU,
        }
    }
}

/// `Σ c_k z^k` in double precision.
pub fn eval_complex(p: &UniPoly, z: Complex64) -> Complex64 {
    p.coeffs().iter().rev().fold(Complex64::zero(), |acc, c| acc * z + to_f64(c))
}

impl RationalFunction {
    /// Reduces `num/den` and normalizes the denominator to be monic.
    pub fn new(num: UniPoly, den: UniPoly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(NevanlinnaError::Degenerate("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RationalFunction { num, den: UniPoly::constant(Scalar::one()) });
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let lead = den.leading();
        Ok(RationalFunction { num: num.scale(&(Scalar::one() / &lead)), den: den.monic() })
    }

    /// The polynomial `p`.
    pub fn polynomial(p: UniPoly) -> RationalFunction {
        RationalFunction { num: p, den: UniPoly::constant(Scalar::one()) }
    }

    /// `1/F`.
    pub fn reciprocal(&self) -> Result<RationalFunction> {
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    /// `F(z)` in double precision.
    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        eval_complex(&self.num, z) / eval_complex(&self.den, z)
    }

    /// Whether `F` is constant.
    pub fn is_constant(&self) -> bool {
        self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0)
    }

    /// The polynomial whose roots are the `c`-points of `F`.
    fn target_polynomial(&self, c: &Target) -> UniPoly {
        match c {
            Target::Finite(v) => self.num.sub(&self.den.scale(v)),
            Target::Infinity => self.den.clone(),
        }
    }
}

fn check_radii(r: f64, r1: Option<f64>) -> Result<()> {
    let ok = r.is_finite() && r > 0.0 && r1.is_none_or(|r1| r1.is_finite() && r1 >= 0.0 && r > r1);
    if ok {
        Ok(())
    } else {
        Err(NevanlinnaError::InvalidRadius(format!("r = {r}, r1 = {r1:?}")))
    }
}

/// `N(r, F, c) = Σ_{|a|<r} log(r/|a|)` over the `c`-points with
/// multiplicity, or with a base radius
/// `N(r, r1, F, c) = Σ_{r1<|a|<r} log(r/|a|) + n(r1)·log(r/r1)`, where
/// `n(r1)` counts the `c`-points with `|a| ≤ r1`.
pub fn counting_function(f: &RationalFunction, c: &Target, r: f64, r1: Option<f64>) -> Result<f64> {
    check_radii(r, r1)?;
    let p = f.target_polynomial(c);
    if p.is_zero() {
        return Err(NevanlinnaError::Degenerate("F is identically equal to the target".into()));
    }
    if r1.is_none() && p.coeff(0).is_zero() {
        return Err(NevanlinnaError::BasePointViolation);
    }
    let mut total = 0.0;
    for (modulus, mult) in isolate_roots(&p).moduli() {
        let m = mult as f64;
        match r1 {
            Some(r1) if modulus <= r1 => total += m * (r / r1).ln(),
            _ if modulus < r => total += m * (r / modulus).ln(),
            _ => {}
        }
    }
    Ok(total)
}

/// `∫_0^{2π} g(ρe^{iθ}) dθ`.
fn circle_integral(g: &dyn Fn(Complex64) -> f64, rho: f64) -> Result<Estimate> {
    integrate(&|t: f64| g(Complex64::from_polar(rho, t)), 0.0, TAU, QUADRATURE_TOLERANCE)
}

fn check_circle(f: &RationalFunction, rho: f64) -> Result<()> {
    let tol = 1e-9 * rho.max(1.0);
    if isolate_roots(&f.den).moduli().iter().any(|(m, _)| (m - rho).abs() < tol) {
        return Err(NevanlinnaError::PoleOnCircle { r: rho });
    }
    Ok(())
}

/// `∫_0^{2π} log⁺|F(ρe^{iθ})| dθ`.
pub fn proximity_integral(f: &RationalFunction, rho: f64) -> Result<Estimate> {
    if rho == 0.0 {
        let v = f.eval_complex(Complex64::zero()).norm().ln().max(0.0);
        return Ok(Estimate { value: TAU * v, error: 0.0 });
    }
    check_circle(f, rho)?;
    circle_integral(&|z| f.eval_complex(z).norm().ln().max(0.0), rho)
}

/// `T(r, F) = N(r, F, ∞) + c_T·∫ log⁺|F(re^{iθ})| dθ`. With a base radius
/// the counting term is `N(r, r1, F, ∞)` and the circle term is the
/// difference of the integrals at `r` and `r1`, so that
/// `T(r, r1) = T(r, r2) + T(r2, r1)`.
pub fn characteristic(f: &RationalFunction, r: f64, r1: Option<f64>, norm: Normalization) -> Result<Estimate> {
    check_radii(r, r1)?;
    let counting = counting_function(f, &Target::Infinity, r, r1)?;
    let outer = proximity_integral(f, r)?;
    let inner = match r1 {
        Some(r1) => proximity_integral(f, r1)?,
        None => Estimate { value: 0.0, error: 0.0 },
    };
    let c = norm.constant();
    Ok(Estimate { value: counting + c * (outer.value - inner.value), error: c * (outer.error + inner.error) })
}
