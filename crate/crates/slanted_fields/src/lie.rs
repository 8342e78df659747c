//! Lie derivatives of jet differentials along fields on the base, and the
//! order arithmetic they obey along a divisor.

use core_poly::{DiffPoly, Family, Var};

use crate::error::{Result, SlantedError};
use crate::field::ParamVectorField;

/// The coordinate family of a field in the base directions, with polynomial
/// coefficients `g_j(w)`.
fn base_family(field: &ParamVectorField) -> Result<Option<Family>> {
    let mut family = None;
    for (v, c) in field.components() {
        let fam = match v {
            Var::X { order: 0, .. } => Family::Inhomogeneous,
            Var::Z { order: 0, .. } => Family::Homogeneous,
            other => return Err(SlantedError::AlphabetMismatch(format!("direction d/d{other} is not a base coordinate"))),
        };
        if family.is_some_and(|f| f != fam) {
            return Err(SlantedError::AlphabetMismatch("field mixes x and z directions".into()));
        }
        family = Some(fam);
        let g = c
            .as_poly()
            .ok_or_else(|| SlantedError::AlphabetMismatch(format!("coefficient of d/d{v} is not a polynomial")))?;
        if let Some(bad) = g.variables().into_iter().find(|w| !(w.is_base() && w.family() == Some(fam))) {
            return Err(SlantedError::AlphabetMismatch(format!("coefficient of d/d{v} depends on {bad}")));
        }
    }
    Ok(family)
}

/// `ℒie_ξ ω` for `ξ = Σ g_j(w) ∂/∂w_j`: the derivation with
/// `ℒie_ξ(d^k w_j) = d^k g_j`.
pub fn lie_derivative(field: &ParamVectorField, omega: &DiffPoly) -> Result<DiffPoly> {
    let family = base_family(field)?;
    for v in omega.variables() {
        let ok = matches!(v, Var::X { .. } | Var::Z { .. }) && family.map_or(true, |f| v.family() == Some(f));
        if !ok {
            return Err(SlantedError::AlphabetMismatch(format!("{v} is outside the field's coordinate alphabet")));
        }
    }
    Ok(omega.derive_with(&|v: &Var| {
        let base = v.with_order(0).expect("coordinate variable");
        match field.component(&base).as_poly() {
            Some(g) => g.total_derivative_n(v.order()),
            None => DiffPoly::zero(),
        }
    }))
}

/// Vanishing, pole, weight and degree data of a jet differential along a
/// divisor `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderLedger {
    /// Order of vanishing along `D`.
    pub vanishing_order_at_divisor: i64,
    /// Order of the pole along `D` (zero for holomorphic differentials).
    pub pole_order_at_divisor: i64,
    /// Weight of the jet differential.
    pub weight: u32,
    /// Degree in the base coordinates.
    pub base_degree: u32,
}

/// The ledger of `ℒie_ξ ω` when `ξ` has poles of order at most `q` along `D`
/// and `ω` is a `k`-jet differential vanishing to order `p ≥ q + k`: the
/// result is holomorphic, vanishes to order `p − (q + k)`, and has the same
/// weight.
pub fn order_ledger_after_lie(ledger: &OrderLedger, q: i64, k: i64) -> Result<OrderLedger> {
    let p = ledger.vanishing_order_at_divisor;
    if p < q + k {
        return Err(SlantedError::OrderUnderflow { p, q, k });
    }
    Ok(OrderLedger {
        vanishing_order_at_divisor: p - (q + k),
        pole_order_at_divisor: 0,
        weight: ledger.weight,
        base_degree: ledger.base_degree,
    })
}
