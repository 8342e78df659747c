//! Gradings (weight, base degree) and conversion between the homogeneous
//! and inhomogeneous coordinate alphabets.

use std::collections::BTreeMap;

use num::Zero;

use crate::error::{PolyError, Result};
use crate::poly::DiffPoly;
use crate::scalar::int;
use crate::var::Var;

/// The common weight `Σ ℓ·(exponent of order-ℓ variables)` of all terms.
pub fn weight(p: &DiffPoly) -> Result<u32> {
    let mut found: Option<u32> = None;
    for (m, _) in p.terms() {
        let w = m.weight();
        match found {
            None => found = Some(w),
            Some(f) if f != w => return Err(PolyError::NotWeightHomogeneous { first: f, second: w }),
            Some(_) => {}
        }
    }
    found.ok_or(PolyError::ZeroPolynomial)
}

/// Maximum total exponent of base coordinates over terms.
pub fn degree_in_base(p: &DiffPoly) -> Result<u32> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    Ok(p.max_degree_where(Var::is_base))
}

/// `z_0^(ℓ+1)·d^ℓ(z_j/z_0)` as a polynomial in the `d^i z`, homogeneous of
/// degree `ℓ+1`.
///
/// Uses `H_0 = z_j` and `H_(ℓ+1) = z_0·dH_ℓ − (ℓ+1)·dz_0·H_ℓ`.
pub fn cleared_quotient_derivative(j: u32, l: u32) -> DiffPoly {
    let z0 = DiffPoly::var(Var::z(0));
    let dz0 = DiffPoly::var(Var::dz(1, 0));
    let mut h = DiffPoly::var(Var::z(j));
    for i in 0..l {
        h = &(&z0 * &h.total_derivative()) - &(&dz0 * &h).scale(&int(i as i64 + 1));
    }
    h
}

/// Rewrites `z_0^(m0+2m)·q` in homogeneous coordinates via `x_j = z_j/z_0`.
///
/// `q` must use only `x_j` and `d^ℓ x_j`, have base degree at most `m0`
/// and weight exactly `m` (the zero polynomial is accepted and maps to
/// zero). The result is homogeneous of degree `m0+2m` in all variables.
pub fn homogenize_jet(q: &DiffPoly, m0: u32, m: u32) -> Result<DiffPoly> {
    if q.is_zero() {
        return Ok(DiffPoly::zero());
    }
    for v in q.variables() {
        if !matches!(v, Var::X { .. }) {
            return Err(PolyError::UnsupportedVariable(v.to_string()));
        }
    }
    let w = weight(q)?;
    if w != m {
        return Err(PolyError::GradingViolation(format!("weight {w} differs from declared weight {m}")));
    }
    let b = degree_in_base(q)?;
    if b > m0 {
        return Err(PolyError::GradingViolation(format!("base degree {b} exceeds declared degree {m0}")));
    }
    let target = m0 + 2 * m;
    let mut cache: BTreeMap<(u32, u32), DiffPoly> = BTreeMap::new();
    let mut out = DiffPoly::zero();
    for (mono, c) in q.terms() {
        let mut acc = DiffPoly::constant(c.clone());
        let mut clearing = 0u32;
        for (v, e) in mono.factors() {
            let (l, j) = match v {
                Var::X { order, index } => (*order, *index),
                _ => unreachable!("checked above"),
            };
            let h = cache.entry((l, j)).or_insert_with(|| cleared_quotient_derivative(j, l));
            acc = &acc * &h.pow(*e);
            clearing += (l + 1) * e;
        }
        if clearing > target {
            return Err(PolyError::GradingViolation(format!(
                "term needs z0^{clearing} to clear but only z0^{target} is available"
            )));
        }
        out += acc.mul_term(&crate::Monomial::var_pow(Var::z(0), target - clearing), &int(1));
    }
    Ok(out)
}

/// Sets `z_0 = 1`, `d^ℓ z_0 = 0` and renames `d^ℓ z_j ↦ d^ℓ x_j` for `j ≥ 1`.
pub fn dehomogenize(p: &DiffPoly) -> DiffPoly {
    let mut out = DiffPoly::zero();
    for (m, c) in p.terms() {
        let mut pairs = Vec::new();
        let mut killed = false;
        for (v, e) in m.factors() {
            match v {
                Var::Z { order: 0, index: 0 } => {}
                Var::Z { index: 0, .. } => {
                    killed = true;
                    break;
                }
                Var::Z { order, index } => pairs.push((Var::dx(*order, *index), *e)),
                other => pairs.push((other.clone(), *e)),
            }
        }
        if !killed && !c.is_zero() {
            out.add_term(crate::Monomial::from_pairs(pairs), c.clone());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_poly;

    fn p(s: &str) -> DiffPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn weight_examples() {
        assert_eq!(weight(&p("dx1*d2x2")).unwrap(), 3);
        assert_eq!(weight(&p("x1^5")).unwrap(), 0);
        assert_eq!(weight(&p("dx1^2 + d2x2")).unwrap(), 2);
        assert!(matches!(weight(&p("dx1 + d2x2")), Err(PolyError::NotWeightHomogeneous { .. })));
        assert_eq!(weight(&DiffPoly::zero()), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn base_degree_examples() {
        assert_eq!(degree_in_base(&p("x1^2*dx2")).unwrap(), 2);
        assert_eq!(degree_in_base(&p("dx1")).unwrap(), 0);
        assert_eq!(degree_in_base(&p("x1*x2^3 + x1^4")).unwrap(), 4);
    }

    #[test]
    fn homogenize_examples() {
        assert_eq!(homogenize_jet(&p("dx1"), 0, 1).unwrap(), p("z0*dz1 - z1*dz0"));
        assert_eq!(homogenize_jet(&p("x1"), 1, 0).unwrap(), p("z1"));
        let second = p("z0^2*d2z1 - z0*z1*d2z0 - 2*z0*dz0*dz1 + 2*z1*dz0^2");
        assert_eq!(cleared_quotient_derivative(1, 2), second);
        assert_eq!(homogenize_jet(&p("d2x1"), 0, 2).unwrap(), &p("z0") * &second);
    }

    #[test]
    fn homogenize_rejects_bad_gradings() {
        assert!(matches!(homogenize_jet(&p("x1^2*dx1"), 1, 1), Err(PolyError::GradingViolation(_))));
        assert!(matches!(homogenize_jet(&p("dx1"), 0, 2), Err(PolyError::GradingViolation(_))));
        assert!(homogenize_jet(&p("xi1_1"), 0, 1).is_err());
    }
}
