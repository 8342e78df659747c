//! Fields on the parameter space tangent to the universal hypersurface.

use core_poly::scalar::int;
use core_poly::{DiffPoly, MultiIndex, Scalar, Var};
use jetfiber::UniversalPoly;
use num::Zero;

use crate::error::{Result, SlantedError};
use crate::field::ParamVectorField;
use crate::rational::RationalCoeff;

/// `z_q ∂/∂α_ν − z_p ∂/∂α_μ` for `ν + e_q = μ + e_p`, which kills
/// `f = Σ α_ν z^ν` because `∂f/∂α_ν = z^ν`.
pub fn tangent_field_pair(p: u32, q: u32, nu: &MultiIndex, mu: &MultiIndex) -> Result<ParamVectorField> {
    if p == q {
        return Err(SlantedError::IndexMismatch(format!("p = q = {p}")));
    }
    if nu.len() != mu.len() || nu.degree() != mu.degree() {
        return Err(SlantedError::IndexMismatch(format!("{nu} and {mu} differ in length or degree")));
    }
    let n = nu.len() as u32 - 1;
    for i in [p, q] {
        if i > n {
            return Err(SlantedError::IndexOutOfRange { index: i, n });
        }
    }
    if nu.add_unit(q as usize) != mu.add_unit(p as usize) {
        return Err(SlantedError::IndexMismatch(format!("{nu} + e_{q} differs from {mu} + e_{p}")));
    }
    let mut field = ParamVectorField::zero();
    field.add_component(Var::alpha(nu.clone()), RationalCoeff::from_poly(DiffPoly::var(Var::z(q))))?;
    field.add_component(Var::alpha(mu.clone()), RationalCoeff::from_poly(-&DiffPoly::var(Var::z(p))))?;
    Ok(field)
}

/// Lifts the linear field `ξ = Σ a_{jk} z_j ∂/∂z_k` on projective space to a
/// field `ξ̃ = ξ + Σ_ν β_ν ∂/∂α_ν` tangent to `{f = 0}`, where
/// `β_ν = −Σ_{j≠k} a_{jk}(ν_k+1) α_{ν−e_j+e_k} − Σ_j a_{jj} ν_j α_ν`.
///
/// `a` is indexed `a[j][k]`; only `f`'s dimension and degree are used, the
/// coefficients `α_ν` entering `β_ν` are those of `f`.
pub fn lift_linear_field(a: &[Vec<Scalar>], f: &UniversalPoly) -> Result<ParamVectorField> {
    let size = f.n as usize + 1;
    if a.len() != size || a.iter().any(|row| row.len() != size) {
        return Err(SlantedError::AlphabetMismatch(format!("matrix must be {size}×{size}")));
    }
    let mut field = ParamVectorField::zero();
    for (j, row) in a.iter().enumerate() {
        for (k, ajk) in row.iter().enumerate() {
            if !ajk.is_zero() {
                let coeff = DiffPoly::var(Var::z(j as u32)).scale(ajk);
                field.add_component(Var::z(k as u32), RationalCoeff::from_poly(coeff))?;
            }
        }
    }
    for nu in MultiIndex::all_of_degree(size, f.delta) {
        let mut beta = DiffPoly::zero();
        for (j, row) in a.iter().enumerate() {
            for (k, ajk) in row.iter().enumerate() {
                if ajk.is_zero() {
                    continue;
                }
                if j == k {
                    let factor = ajk * int(nu.get(j) as i64);
                    beta -= f.coefficient(&nu).scale(&factor);
                } else if let Some(shifted) = nu.sub_unit(j) {
                    let source = shifted.add_unit(k);
                    let factor = ajk * int(nu.get(k) as i64 + 1);
                    beta -= f.coefficient(&source).scale(&factor);
                }
            }
        }
        if !beta.is_zero() {
            field.add_component(Var::alpha(nu), RationalCoeff::from_poly(beta))?;
        }
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core_poly::parse_poly;
    use core_poly::scalar::frac;

    fn mi(c: &[u32]) -> MultiIndex {
        MultiIndex::new(c.iter().copied())
    }

    #[test]
    fn tangent_pair_examples() {
        let f = UniversalPoly::symbolic(1, 2).to_poly();
        let v = tangent_field_pair(0, 1, &mi(&[2, 0]), &mi(&[1, 1])).unwrap();
        assert!(v.apply(&f).is_zero());
        assert_eq!(v.to_string(), "(-z0)*d/dalpha[1,1] + (z1)*d/dalpha[2,0]");
        // Negative control: the coefficients of z0^2 and z0*z1 swapped.
        let g = parse_poly("a[2,0]*z0*z1 + a[1,1]*z0^2 + a[0,2]*z1^2").unwrap();
        assert_eq!(v.apply(&g).as_poly(), Some(&parse_poly("z0*z1^2 - z0^3").unwrap()));
        let f2 = UniversalPoly::symbolic(2, 3).to_poly();
        let w = tangent_field_pair(1, 2, &mi(&[1, 1, 1]), &mi(&[1, 0, 2])).unwrap();
        assert!(w.apply(&f2).is_zero());
    }

    #[test]
    fn tangent_pair_rejects_mismatch() {
        assert!(matches!(
            tangent_field_pair(0, 1, &mi(&[2, 0]), &mi(&[0, 2])),
            Err(SlantedError::IndexMismatch(_))
        ));
    }

    #[test]
    fn lifted_identity_is_euler() {
        let f = UniversalPoly::symbolic(1, 3);
        let id = vec![vec![int(1), int(0)], vec![int(0), int(1)]];
        let v = lift_linear_field(&id, &f).unwrap();
        assert!(v.apply(&f.to_poly()).is_zero());
        for (nu, c) in v.alpha_part() {
            let expected = DiffPoly::var(Var::alpha(nu.clone())).scale(&int(-3));
            assert_eq!(c.as_poly(), Some(&expected));
        }
        let zero = lift_linear_field(&[vec![int(0), int(0)], vec![int(0), int(0)]], &f).unwrap();
        assert!(zero.is_empty());
    }

    #[test]
    fn lifted_off_diagonal_field() {
        let f = UniversalPoly::symbolic(1, 2);
        let a = vec![vec![int(0), int(1)], vec![int(0), int(0)]];
        let v = lift_linear_field(&a, &f).unwrap();
        assert!(v.apply(&f.to_poly()).is_zero());
        let b = vec![vec![frac(1, 2), int(3)], vec![frac(-2, 3), int(1)]];
        assert!(lift_linear_field(&b, &f).unwrap().apply(&f.to_poly()).is_zero());
    }
}
