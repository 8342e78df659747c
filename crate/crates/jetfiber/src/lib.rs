//! The universal hypersurface `f = Σ α_ν z^ν`, the polynomials `Φ^(k)_ν`
//! describing its iterated derivatives, and the finite differences
//! `Δ_{r,s}F(ν) = F(ν+e_r) − F(ν+e_s)` on families indexed by `ν`.
//!
//! Families indexed by a multi-index are stored as one [`DiffPoly`] whose
//! coefficients are polynomials in the symbolic components `ν_0, …, ν_n`
//! ([`Var::Nu`]); a concrete member is obtained by substituting integers.
//! Derivatives of `f` are taken in the `(z, ξ)` alphabet where
//! `d z_j = z_j ξ^(1)_j` and `d ξ^(i)_j = ξ^(i+1)_j`.

use std::collections::BTreeMap;

use core_poly::scalar::{factorial, int};
use core_poly::{DiffPoly, Monomial, MultiIndex, Scalar, Var};
use num::Zero;
use rand::Rng;
use thiserror::Error;

/// Default cap on the jet order accepted by [`verify_dkf`].
pub const DEFAULT_ORDER_CAP: u32 = 5;

/// Failures of the jet-fiber operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JetFiberError {
    /// An index exceeds the dimension `n`.
    #[error("index {index} out of range 0..={n}")]
    IndexOutOfRange { index: u32, n: u32 },
    /// A finite difference with `r = s`.
    #[error("degenerate pair ({0}, {0})")]
    DegeneratePair(u32),
    /// A coefficient map that does not describe a degree-δ hypersurface.
    #[error("invalid coefficients: {0}")]
    InvalidCoefficients(String),
    /// The requested order exceeds the configured cap.
    #[error("order {k} exceeds the cap {cap}")]
    OrderCapExceeded { k: u32, cap: u32 },
    /// The number of Δ pairs does not match the order.
    #[error("expected {expected} pairs, got {got}")]
    PairCount { expected: usize, got: usize },
}

/// Result alias for this crate.
pub type Result<T> = std::result::Result<T, JetFiberError>;

/// Coefficients of the universal hypersurface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    /// Concrete rational coefficients; absent multi-indices are zero.
    Concrete(BTreeMap<MultiIndex, Scalar>),
    /// Every coefficient is the symbol `α_ν`.
    Symbolic,
}

/// A degree-δ homogeneous polynomial in `z_0, …, z_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalPoly {
    /// Projective dimension.
    pub n: u32,
    /// Degree.
    pub delta: u32,
    /// Coefficients.
    pub coefficients: Coefficients,
}

impl UniversalPoly {
    /// The universal polynomial with symbolic coefficients `α_ν`.
    pub fn symbolic(n: u32, delta: u32) -> UniversalPoly {
        UniversalPoly { n, delta, coefficients: Coefficients::Symbolic }
    }

    /// A concrete polynomial; zero coefficients are dropped.
    pub fn concrete(n: u32, delta: u32, coeffs: impl IntoIterator<Item = (MultiIndex, Scalar)>) -> Result<UniversalPoly> {
        let mut map = BTreeMap::new();
        for (nu, c) in coeffs {
            if nu.len() != n as usize + 1 || nu.degree() != delta {
                return Err(JetFiberError::InvalidCoefficients(format!(
                    "multi-index {nu} is not of length {} and degree {delta}",
                    n + 1
                )));
            }
            if !c.is_zero() {
                map.insert(nu, c);
            }
        }
        if map.is_empty() {
            return Err(JetFiberError::InvalidCoefficients("all coefficients vanish".into()));
        }
        Ok(UniversalPoly { n, delta, coefficients: Coefficients::Concrete(map) })
    }

    /// A random concrete polynomial with at most `max_terms` nonzero
    /// coefficients drawn from small integers.
    pub fn random_concrete(n: u32, delta: u32, max_terms: usize, rng: &mut impl Rng) -> UniversalPoly {
        let all = MultiIndex::all_of_degree(n as usize + 1, delta);
        let count = rng.gen_range(1..=max_terms.max(1).min(all.len()));
        let mut coeffs = BTreeMap::new();
        while coeffs.len() < count {
            let nu = all[rng.gen_range(0..all.len())].clone();
            let mut c = 0i64;
            while c == 0 {
                c = rng.gen_range(-5..=5);
            }
            coeffs.insert(nu, int(c));
        }
        UniversalPoly::concrete(n, delta, coeffs).expect("nonempty random coefficients")
    }

    /// Multi-indices carrying a (possibly symbolic) nonzero coefficient.
    pub fn support(&self) -> Vec<MultiIndex> {
        match &self.coefficients {
            Coefficients::Concrete(map) => map.keys().cloned().collect(),
            Coefficients::Symbolic => MultiIndex::all_of_degree(self.n as usize + 1, self.delta),
        }
    }

    /// The coefficient of `z^ν` as a polynomial (a scalar or `α_ν`).
    pub fn coefficient(&self, nu: &MultiIndex) -> DiffPoly {
        match &self.coefficients {
            Coefficients::Concrete(map) => map.get(nu).map(|c| DiffPoly::constant(c.clone())).unwrap_or_default(),
            Coefficients::Symbolic => DiffPoly::var(Var::alpha(nu.clone())),
        }
    }

    /// `f = Σ α_ν z^ν` in the homogeneous alphabet.
    pub fn to_poly(&self) -> DiffPoly {
        self.support().iter().map(|nu| &self.coefficient(nu) * &DiffPoly::term(z_monomial(nu), int(1))).sum()
    }
}

/// The monomial `z^ν`.
pub fn z_monomial(nu: &MultiIndex) -> Monomial {
    Monomial::from_pairs(nu.components().iter().enumerate().map(|(j, e)| (Var::z(j as u32), *e)))
}

/// The derivation of the `(z, ξ)` alphabet: `z_j ↦ z_j ξ^(1)_j`,
/// `ξ^(i)_j ↦ ξ^(i+1)_j`, with `α_ν` and `ν_j` constant.
pub fn chain_rule_derivative(p: &DiffPoly) -> DiffPoly {
    p.derive_with(&|v: &Var| match v {
        Var::Z { order: 0, index } => &DiffPoly::var(Var::z(*index)) * &DiffPoly::var(Var::xi(1, *index)),
        other => match other.successor() {
            Some(s) => DiffPoly::var(s),
            None => DiffPoly::zero(),
        },
    })
}

/// `d^k f` in the `(z, ξ)` alphabet, by `k` applications of
/// [`chain_rule_derivative`].
pub fn d_k_f(f: &UniversalPoly, k: u32) -> DiffPoly {
    let mut p = f.to_poly();
    for _ in 0..k {
        p = chain_rule_derivative(&p);
    }
    p
}

/// The family `ν ↦ Φ^(k)_ν`, stored with symbolic `ν_0, …, ν_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiFamily {
    /// Jet order.
    pub k: u32,
    /// Projective dimension.
    pub n: u32,
    /// `Φ^(k)` as a polynomial in `ξ^(ℓ)_j` and `ν_j`.
    pub poly: DiffPoly,
}

impl PhiFamily {
    /// The member `Φ^(k)_ν` for a concrete multi-index.
    pub fn at(&self, nu: &MultiIndex) -> DiffPoly {
        substitute_nu(&self.poly, nu)
    }
}

/// Substitutes integer values `ν_j` into a symbolic family.
pub fn substitute_nu(p: &DiffPoly, nu: &MultiIndex) -> DiffPoly {
    p.substitute_with(&|v: &Var| match v {
        Var::Nu(j) => Some(DiffPoly::constant(int(nu.get(*j as usize) as i64))),
        _ => None,
    })
}

/// `Σ_ℓ ν_ℓ ξ^(1)_ℓ`.
pub fn phi_one(n: u32) -> DiffPoly {
    (0..=n).map(|l| &DiffPoly::var(Var::nu(l)) * &DiffPoly::var(Var::xi(1, l))).sum()
}

/// The derivation `ξ^(i)_ℓ ↦ ξ^(i+1)_ℓ` with `ν` constant.
fn d_xi(p: &DiffPoly) -> DiffPoly {
    p.derive_with(&|v: &Var| match v {
        Var::Xi { order, index } => DiffPoly::var(Var::xi(order + 1, *index)),
        _ => DiffPoly::zero(),
    })
}

/// `Φ^(0) = 1` and
/// `Φ^(k+1)_ν = (Σ_ℓ ν_ℓ ξ^(1)_ℓ)·Φ^(k)_ν + Σ_ℓ Σ_i ξ^(i+1)_ℓ ∂Φ^(k)_ν/∂ξ^(i)_ℓ`.
pub fn phi(k: u32, n: u32) -> PhiFamily {
    phi_upto(k, n).pop().expect("at least Φ^(0)")
}

/// The families `Φ^(0), …, Φ^(k)`.
pub fn phi_upto(k: u32, n: u32) -> Vec<PhiFamily> {
    let first = phi_one(n);
    let mut out = vec![PhiFamily { k: 0, n, poly: DiffPoly::one() }];
    for i in 0..k {
        let prev = &out[i as usize].poly;
        let next = &(&first * prev) + &d_xi(prev);
        out.push(PhiFamily { k: i + 1, n, poly: next });
    }
    out
}

/// `Σ_ν α_ν Φ^(k)_ν z^ν`.
pub fn expected_dkf(f: &UniversalPoly, family: &PhiFamily) -> DiffPoly {
    f.support()
        .iter()
        .map(|nu| {
            let coeff = f.coefficient(nu);
            &(&coeff * &family.at(nu)) * &DiffPoly::term(z_monomial(nu), int(1))
        })
        .sum()
}

/// Checks `d^k f = Σ_ν α_ν Φ^(k)_ν z^ν` exactly, with the default order cap.
pub fn verify_dkf(f: &UniversalPoly, k: u32) -> Result<bool> {
    verify_dkf_with_cap(f, k, DEFAULT_ORDER_CAP)
}

/// Checks `d^k f = Σ_ν α_ν Φ^(k)_ν z^ν` exactly for `k ≤ cap`.
pub fn verify_dkf_with_cap(f: &UniversalPoly, k: u32, cap: u32) -> Result<bool> {
    if k > cap {
        return Err(JetFiberError::OrderCapExceeded { k, cap });
    }
    Ok(d_k_f(f, k) == expected_dkf(f, &phi(k, f.n)))
}

fn check_index(i: u32, n: u32) -> Result<()> {
    if i > n {
        Err(JetFiberError::IndexOutOfRange { index: i, n })
    } else {
        Ok(())
    }
}

/// `Δ_{r,s}F(ν) = F(ν+e_r) − F(ν+e_s)` for a family with symbolic `ν`.
pub fn delta_apply(family: &DiffPoly, r: u32, s: u32, n: u32) -> Result<DiffPoly> {
    check_index(r, n)?;
    check_index(s, n)?;
    if r == s {
        return Err(JetFiberError::DegeneratePair(r));
    }
    let shift = |i: u32| family.substitute(&Var::nu(i), &(&DiffPoly::var(Var::nu(i)) + &DiffPoly::one()));
    Ok(&shift(r) - &shift(s))
}

/// `Δ_{r_1,s_1}⋯Δ_{r_k,s_k} Φ^(k)_ν`.
pub fn delta_product_phi(k: u32, pairs: &[(u32, u32)], n: u32) -> Result<DiffPoly> {
    if pairs.len() != k as usize {
        return Err(JetFiberError::PairCount { expected: k as usize, got: pairs.len() });
    }
    apply_deltas(&phi(k, n).poly, pairs, n)
}

/// Applies `Δ_{r,s}` for each pair, innermost last in the list.
pub fn apply_deltas(family: &DiffPoly, pairs: &[(u32, u32)], n: u32) -> Result<DiffPoly> {
    let mut p = family.clone();
    for (r, s) in pairs.iter().rev() {
        p = delta_apply(&p, *r, *s, n)?;
    }
    Ok(p)
}

/// `k!·Π_ℓ (ξ^(1)_{r_ℓ} − ξ^(1)_{s_ℓ})`.
pub fn delta_product_closed_form(pairs: &[(u32, u32)]) -> DiffPoly {
    let mut p = DiffPoly::constant(factorial(pairs.len() as u32));
    for (r, s) in pairs {
        p = &p * &xi_difference(*r, *s);
    }
    p
}

/// `ξ^(1)_r − ξ^(1)_s`.
pub fn xi_difference(r: u32, s: u32) -> DiffPoly {
    &DiffPoly::var(Var::xi(1, r)) - &DiffPoly::var(Var::xi(1, s))
}

/// Total degree of a family in the symbolic components `ν_j`.
pub fn nu_degree(p: &DiffPoly) -> u32 {
    p.max_degree_where(|v| matches!(v, Var::Nu(_)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core_poly::parse_poly;

    fn poly(s: &str) -> DiffPoly {
        parse_poly(s).unwrap()
    }

    #[test]
    fn phi_low_orders() {
        assert_eq!(phi(0, 2).poly, DiffPoly::one());
        assert_eq!(phi(1, 2).poly, phi_one(2));
        let s = phi_one(2);
        let second: DiffPoly = (0..=2).map(|l| &DiffPoly::var(Var::nu(l)) * &DiffPoly::var(Var::xi(2, l))).sum();
        assert_eq!(phi(2, 2).poly, &s.pow(2) + &second);
    }

    #[test]
    fn dkf_examples() {
        let f = UniversalPoly::concrete(1, 2, [(MultiIndex::new([1, 1]), int(1))]).unwrap();
        assert!(verify_dkf(&f, 0).unwrap());
        assert!(verify_dkf(&f, 1).unwrap());
        assert_eq!(d_k_f(&f, 1), poly("z0*z1*xi1_0 + z0*z1*xi1_1"));
        assert!(matches!(verify_dkf(&f, 6), Err(JetFiberError::OrderCapExceeded { .. })));
    }

    #[test]
    fn delta_examples() {
        let n = 2;
        assert!(delta_apply(&DiffPoly::int(7), 1, 0, n).unwrap().is_zero());
        assert_eq!(delta_apply(&phi(1, n).poly, 2, 1, n).unwrap(), xi_difference(2, 1));
        let twice = apply_deltas(&phi(2, n).poly, &[(1, 0), (2, 0)], n).unwrap();
        assert_eq!(twice, &(&xi_difference(1, 0) * &xi_difference(2, 0)) * &DiffPoly::int(2));
        assert_eq!(delta_product_phi(1, &[(1, 0)], n).unwrap(), poly("xi1_1 - xi1_0"));
        assert!(matches!(delta_apply(&phi_one(n), 3, 0, n), Err(JetFiberError::IndexOutOfRange { .. })));
        assert!(matches!(delta_apply(&phi_one(n), 1, 1, n), Err(JetFiberError::DegeneratePair(1))));
    }

    #[test]
    fn concrete_validation() {
        assert!(UniversalPoly::concrete(1, 2, [(MultiIndex::new([1, 0]), int(1))]).is_err());
        assert!(UniversalPoly::concrete(1, 2, [(MultiIndex::new([2, 0]), int(0))]).is_err());
    }
}
