//! The Θ/Ψ induction over binary trees with level-wise homogeneous branches,
//! and the closed-form Δ fields.
//!
//! For a tree with level pairs `(r_1, s_1), …, (r_k, s_k)` and `|λ| = δ − k`,
//! `Θ^(0)_λ = ∂/∂α_λ`, `Ψ^(j)_λ = Φ^(j)_λ`, and one level up
//!
//! ```text
//! Θ^(k)_λ = Θ^(k−1)_{λ+e_r} / (z_r Ψ^(k−1)_{λ+e_r}) − Θ^(k−1)_{λ+e_s} / (z_s Ψ^(k−1)_{λ+e_s})
//! Ψ^(j)_λ = Ψ^(j)_{λ+e_r} / Ψ^(k−1)_{λ+e_r} − Ψ^(j)_{λ+e_s} / Ψ^(k−1)_{λ+e_s}
//! ```
//!
//! where `(r, s)` is the root pair and the order-`(k−1)` quantities use the
//! subtree formed by levels `2..k`.

use std::collections::HashMap;

use core_poly::scalar::int;
use core_poly::{DiffPoly, Monomial, MultiIndex, Var};
use jetfiber::{phi_upto, z_monomial, PhiFamily};

use crate::error::{Result, SlantedError};
use crate::field::ParamVectorField;
use crate::rational::RationalCoeff;

/// A binary tree of order `k` with level-wise homogeneous branches, stored as
/// its level pairs `(r_j, s_j)`, root first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryTreeSpec {
    levels: Vec<(u32, u32)>,
}

impl BinaryTreeSpec {
    /// Validates `0 ≤ r_j ≠ s_j ≤ n` at every level.
    pub fn new(levels: Vec<(u32, u32)>, n: u32) -> Result<BinaryTreeSpec> {
        for (level, (r, s)) in levels.iter().enumerate() {
            for i in [*r, *s] {
                if i > n {
                    return Err(SlantedError::IndexOutOfRange { index: i, n });
                }
            }
            if r == s {
                return Err(SlantedError::DegenerateTree { level: level + 1, index: *r });
            }
        }
        Ok(BinaryTreeSpec { levels })
    }

    /// The tree with `r_j = 1`, `s_j = 2` at every level (`n ≥ 2`), or the
    /// pair `(0, 1)` when `n = 1`.
    pub fn standard(k: u32, n: u32) -> Result<BinaryTreeSpec> {
        let pair = if n >= 2 { (1, 2) } else { (0, 1) };
        BinaryTreeSpec::new(vec![pair; k as usize], n)
    }

    /// The order `k`.
    pub fn order(&self) -> u32 {
        self.levels.len() as u32
    }

    /// Level pairs, root first.
    pub fn levels(&self) -> &[(u32, u32)] {
        &self.levels
    }

    /// The subtree of the last `k` levels.
    pub fn last_levels(&self, k: u32) -> BinaryTreeSpec {
        let start = self.levels.len() - k as usize;
        BinaryTreeSpec { levels: self.levels[start..].to_vec() }
    }
}

/// `Θ^(k)_λ` together with `Ψ^(j)_λ` for `k ≤ j ≤ j_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaPsi {
    /// The field `Θ^(k)_λ`, a combination of `∂/∂α_ν`.
    pub theta: ParamVectorField,
    /// `j ↦ Ψ^(j)_λ`.
    pub psi: Vec<(u32, RationalCoeff)>,
}

impl ThetaPsi {
    /// `Ψ^(j)_λ`.
    pub fn psi(&self, j: u32) -> Option<&RationalCoeff> {
        self.psi.iter().find(|(i, _)| *i == j).map(|(_, p)| p)
    }
}

/// Memoized evaluator of the induction for one `(n, j_max)`.
pub struct ThetaPsiBuilder {
    phis: Vec<PhiFamily>,
    jmax: u32,
    cache: HashMap<(MultiIndex, Vec<(u32, u32)>), ThetaPsi>,
}

impl ThetaPsiBuilder {
    /// Builder producing `Ψ^(j)` up to `j_max` in dimension `n`.
    pub fn new(n: u32, jmax: u32) -> ThetaPsiBuilder {
        ThetaPsiBuilder { phis: phi_upto(jmax, n), jmax, cache: HashMap::new() }
    }

    /// `Θ^(k)_λ` and `Ψ^(j)_λ` for the given tree.
    pub fn get(&mut self, lambda: &MultiIndex, levels: &[(u32, u32)]) -> Result<ThetaPsi> {
        let key = (lambda.clone(), levels.to_vec());
        if let Some(hit) = self.cache.get(&key) {
            return Ok(hit.clone());
        }
        let k = levels.len() as u32;
        let out = if k == 0 {
            ThetaPsi {
                theta: ParamVectorField::d_alpha(lambda.clone()),
                psi: (0..=self.jmax).map(|j| (j, RationalCoeff::from_poly(self.phis[j as usize].at(lambda)))).collect(),
            }
        } else {
            let (r, s) = levels[0];
            let sub = &levels[1..];
            let a = self.get(&lambda.add_unit(r as usize), sub)?;
            let b = self.get(&lambda.add_unit(s as usize), sub)?;
            let inv = |t: &ThetaPsi| -> Result<RationalCoeff> {
                let lead = t.psi(k - 1).expect("Ψ^(k−1) is kept");
                if lead.is_zero() {
                    return Err(SlantedError::SingularLocus(k - 1));
                }
                lead.inverse()
            };
            let (ia, ib) = (inv(&a)?, inv(&b)?);
            let z_inv = |i: u32| RationalCoeff::from_poly(DiffPoly::var(Var::z(i))).inverse().expect("z_i ≠ 0");
            let theta = a.theta.scale(&(&ia * &z_inv(r))).sub(&b.theta.scale(&(&ib * &z_inv(s))));
            let psi = (k..=self.jmax)
                .map(|j| {
                    let pa = a.psi(j).expect("Ψ^(j) kept");
                    let pb = b.psi(j).expect("Ψ^(j) kept");
                    (j, &(pa * &ia) - &(pb * &ib))
                })
                .collect();
            ThetaPsi { theta, psi }
        };
        self.cache.insert(key, out.clone());
        Ok(out)
    }
}

/// `Θ^(k)_{λ,𝔭}` and `Ψ^(j)_{λ,𝔭}` for `k ≤ j ≤ n−1`, where `k ≤ n−1` is the
/// order of `tree`, `n + 1` the length of `λ`.
pub fn theta_psi(k: u32, lambda: &MultiIndex, tree: &BinaryTreeSpec) -> Result<ThetaPsi> {
    let n = lambda.len() as u32 - 1;
    if tree.order() != k {
        return Err(SlantedError::TreeOrder { expected: k as usize, got: tree.levels.len() });
    }
    if n == 0 || k > n - 1 {
        return Err(SlantedError::OrderOutOfRange { k, n });
    }
    BinaryTreeSpec::new(tree.levels.clone(), n)?;
    ThetaPsiBuilder::new(n, n - 1).get(lambda, &tree.levels)
}

fn check_pairs(pairs: &[(u32, u32)], n: u32) -> Result<()> {
    BinaryTreeSpec::new(pairs.to_vec(), n).map(|_| ())
}

/// Expansion of `Δ_{r_1,s_1}⋯Δ_{r_k,s_k}` applied to `ν ↦ z^{−ν}∂/∂α_ν` at
/// `ν = μ`: a list of `(sign, shift)` with shift `Σ e_{chosen}`.
fn delta_expansion(mu: &MultiIndex, pairs: &[(u32, u32)]) -> Vec<(i64, MultiIndex)> {
    let mut terms = vec![(1i64, MultiIndex::zeros(mu.len()))];
    for (r, s) in pairs {
        let mut next = Vec::with_capacity(terms.len() * 2);
        for (sign, shift) in &terms {
            next.push((*sign, shift.add_unit(*r as usize)));
            next.push((-*sign, shift.add_unit(*s as usize)));
        }
        terms = next;
    }
    terms
}

/// `z^μ·[Δ_{r_1,s_1}⋯Δ_{r_k,s_k}(z^{−ν}∂/∂α_ν)]_{ν=μ}`, which annihilates
/// `d^j f` for `0 ≤ j ≤ k−1`.
pub fn theta_simple(mu: &MultiIndex, pairs: &[(u32, u32)]) -> Result<ParamVectorField> {
    let n = mu.len() as u32 - 1;
    check_pairs(pairs, n)?;
    let mut field = ParamVectorField::zero();
    for (sign, shift) in delta_expansion(mu, pairs) {
        let target = mu.add(&shift);
        let den = DiffPoly::term(z_monomial(&shift), int(1));
        let coeff = RationalCoeff::quotient(DiffPoly::int(sign), &den)?;
        field.add_component(Var::alpha(target), coeff)?;
    }
    Ok(field)
}

/// `z^{λ+Σ(e_{r_ℓ}+e_{s_ℓ})}·[Δ⋯Δ(z^{−ν}∂/∂α_ν)]_{ν=λ}`: the field of
/// [`theta_simple`] times `Π z_{r_ℓ} z_{s_ℓ}`, with polynomial coefficients.
pub fn theta_tilde(lambda: &MultiIndex, pairs: &[(u32, u32)]) -> Result<ParamVectorField> {
    let n = lambda.len() as u32 - 1;
    check_pairs(pairs, n)?;
    let all: MultiIndex = pairs
        .iter()
        .fold(MultiIndex::zeros(lambda.len()), |acc, (r, s)| acc.add_unit(*r as usize).add_unit(*s as usize));
    let mut field = ParamVectorField::zero();
    for (sign, shift) in delta_expansion(lambda, pairs) {
        let rest = all.checked_sub(&shift).ok_or_else(|| SlantedError::NegativeComponent(shift.to_string()))?;
        let coeff = DiffPoly::term(z_monomial(&rest), int(sign));
        field.add_component(Var::alpha(lambda.add(&shift)), RationalCoeff::from_poly(coeff))?;
    }
    Ok(field)
}

/// `Θ^(k)_λ · Π_{ℓ=1..k}(z_{r_ℓ} z_{s_ℓ}) · Π_{ℓ=2..k}(ξ^(1)_{r_ℓ} − ξ^(1)_{s_ℓ})`.
pub fn cleared_theta(lambda: &MultiIndex, tree: &BinaryTreeSpec) -> Result<ParamVectorField> {
    let k = tree.order();
    let tp = theta_psi(k, lambda, tree)?;
    let mut factor = DiffPoly::one();
    for (level, (r, s)) in tree.levels.iter().enumerate() {
        factor = &factor * &DiffPoly::term(Monomial::from_pairs([(Var::z(*r), 1), (Var::z(*s), 1)]), int(1));
        if level >= 1 {
            factor = &factor * &jetfiber::xi_difference(*r, *s);
        }
    }
    Ok(tp.theta.scale(&RationalCoeff::from_poly(factor)))
}
