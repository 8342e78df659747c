//! Corrected fields generating the vertical directions of the jet space.
//!
//! For a basis field `T` (either `z_j ∂/∂z_j` or `∂/∂ξ^(ℓ)_j`) write
//! `T(d^k f) = −Σ_ν Ξ^(k)_ν z^ν`. For each `ν` and `k ≤ n−1` pick `λ ≤ ν`
//! with `|λ| = δ − k` and the tree `𝔭^(k)` formed by the last `k` levels of
//! the chosen order-`(n−1)` tree, and set
//!
//! ```text
//! Θ^(k)_ν   = (z^{ν−λ} / Ψ^(k)_λ) · Θ^(k)_λ          so Θ^(k)_ν(d^k f) = z^ν,
//! Ψ^(k,j)_ν = −Ψ^(j)_λ / Ψ^(k)_λ                     so Θ^(k)_ν(d^j f) = −Ψ^(k,j)_ν z^ν  (j > k).
//! ```
//!
//! The corrected field is
//! `V = T + Σ_ν Σ_{j₀ ≤ k ≤ n−1} Ξ^(j₀)_ν C_ν(j₀, k) Θ^(k)_ν`, where
//! `C_ν(k, k) = 1` and `C_ν(j₀, k) = Σ_{j₀ ≤ i < k} C_ν(j₀, i) Ψ^(i,k)_ν`
//! sums the products of `Ψ` along all chains `j₀ < j₁ < ⋯ < k`.

use core_poly::scalar::int;
use core_poly::{DiffPoly, MultiIndex, Var};
use jetfiber::{phi_upto, z_monomial, UniversalPoly};

use crate::error::{Result, SlantedError};
use crate::field::ParamVectorField;
use crate::rational::RationalCoeff;
use crate::theta::{BinaryTreeSpec, ThetaPsiBuilder};

/// A basis tangent direction `T` of the jet space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisTangent {
    /// `z_j ∂/∂z_j`.
    Euler(u32),
    /// `∂/∂ξ^(ℓ)_j`, stored as `(ℓ, j)`.
    Xi(u32, u32),
}

impl BasisTangent {
    /// The field `T` itself.
    pub fn field(&self) -> ParamVectorField {
        match *self {
            BasisTangent::Euler(j) => {
                ParamVectorField::single(Var::z(j), RationalCoeff::from_poly(DiffPoly::var(Var::z(j))))
            }
            BasisTangent::Xi(l, j) => ParamVectorField::single(Var::xi(l, j), RationalCoeff::one()),
        }
        .expect("basis direction")
    }

    fn check(&self, n: u32) -> Result<()> {
        let (j, l) = match *self {
            BasisTangent::Euler(j) => (j, 1),
            BasisTangent::Xi(l, j) => (j, l),
        };
        if j > n {
            return Err(SlantedError::IndexOutOfRange { index: j, n });
        }
        if l == 0 || l > n {
            return Err(SlantedError::OrderOutOfRange { k: l, n });
        }
        Ok(())
    }
}

/// Weight and degree data of a field after clearing denominators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldBookkeeping {
    /// Maximal weight in the `ξ^(ℓ)` (weight `ℓ`) of a cleared coefficient.
    pub weight: u32,
    /// Maximal total degree in `z_0, …, z_n` of a cleared coefficient.
    pub base_degree: u32,
    /// Pole order along `z_0 = 0` estimated as `base_degree + weight`.
    pub pole_order: u32,
}

/// Bounds the cleared form of a vertical generator must satisfy.
pub fn bookkeeping_bounds(n: u32) -> FieldBookkeeping {
    FieldBookkeeping { weight: n * (n - 1), base_degree: n * n + 2 * n - 1, pole_order: n * (2 * n + 1) }
}

/// Weight and `z`-degree of `D·V` for the least common denominator `D`.
pub fn bookkeeping(field: &ParamVectorField) -> FieldBookkeeping {
    let cleared = field.clear_denominators();
    let mut weight = 0;
    let mut base_degree = 0;
    for c in cleared.components.values() {
        weight = weight.max(c.max_weight());
        base_degree = base_degree.max(c.max_degree_where(|v| matches!(v, Var::Z { order: 0, .. })));
    }
    FieldBookkeeping { weight, base_degree, pole_order: weight + base_degree }
}

/// `Ξ^(k)_ν` for the basis field `T`.
fn xi_source(t: BasisTangent, f: &UniversalPoly, nu: &MultiIndex, phi_k: &DiffPoly) -> DiffPoly {
    let alpha = f.coefficient(nu);
    match t {
        BasisTangent::Euler(j) => -&(&alpha * phi_k).scale(&int(nu.get(j as usize) as i64)),
        BasisTangent::Xi(l, j) => -&(&alpha * &phi_k.partial(&Var::xi(l, j))),
    }
}

/// A multi-index `λ ≤ ν` of degree `|ν| − k`, removing units from the
/// highest coordinates first.
fn lower_index(nu: &MultiIndex, k: u32) -> MultiIndex {
    let mut comps: Vec<u32> = nu.components().to_vec();
    let mut left = k;
    for c in comps.iter_mut().rev() {
        let take = (*c).min(left);
        *c -= take;
        left -= take;
    }
    MultiIndex::new(comps)
}

/// The corrected field `V` for the basis direction `t`, built with the
/// order-`(n−1)` tree `tree`. `V` annihilates `d^j f` for `0 ≤ j ≤ n−1`.
pub fn vertical_generator(t: BasisTangent, f: &UniversalPoly, tree: &BinaryTreeSpec) -> Result<ParamVectorField> {
    let n = f.n;
    t.check(n)?;
    if n == 0 || tree.order() != n - 1 {
        return Err(SlantedError::TreeOrder { expected: n.saturating_sub(1) as usize, got: tree.order() as usize });
    }
    BinaryTreeSpec::new(tree.levels().to_vec(), n)?;
    if f.delta + 1 < n {
        return Err(SlantedError::OrderOutOfRange { k: n - 1, n });
    }
    let top = n - 1;
    let phis = phi_upto(top, n);
    let mut builder = ThetaPsiBuilder::new(n, top);
    let mut out = t.field();
    for nu in f.support() {
        let z_nu = |lambda: &MultiIndex| DiffPoly::term(z_monomial(&nu.checked_sub(lambda).expect("λ ≤ ν")), int(1));
        // Θ^(k)_ν and Ψ^(k,j)_ν for k = 0..=top.
        let mut thetas: Vec<ParamVectorField> = Vec::new();
        let mut psis: Vec<Vec<RationalCoeff>> = Vec::new();
        for k in 0..=top {
            let lambda = lower_index(&nu, k);
            let sub = tree.last_levels(k);
            let tp = builder.get(&lambda, sub.levels())?;
            let lead = tp.psi(k).expect("Ψ^(k) kept");
            if lead.is_zero() {
                return Err(SlantedError::SingularLocus(k));
            }
            let inv = lead.inverse()?;
            thetas.push(tp.theta.scale(&inv.mul_poly(&z_nu(&lambda))));
            psis.push((0..=top).map(|j| if j > k { -&(tp.psi(j).expect("kept") * &inv) } else { RationalCoeff::zero() }).collect());
        }
        for j0 in 0..=top {
            let source = xi_source(t, f, &nu, &phis[j0 as usize].at(&nu));
            if source.is_zero() {
                continue;
            }
            // chain[k] = C_ν(j0, k).
            let mut chain: Vec<RationalCoeff> = vec![RationalCoeff::zero(); (top + 1) as usize];
            chain[j0 as usize] = RationalCoeff::one();
            for k in (j0 + 1)..=top {
                let mut acc = RationalCoeff::zero();
                for i in j0..k {
                    acc = &acc + &(&chain[i as usize] * &psis[i as usize][k as usize]);
                }
                chain[k as usize] = acc;
            }
            for k in j0..=top {
                let c = chain[k as usize].mul_poly(&source);
                if !c.is_zero() {
                    out = out.add(&thetas[k as usize].scale(&c));
                }
            }
        }
    }
    Ok(out)
}
