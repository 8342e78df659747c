//! Evaluation of differential polynomials along curve germs.

use std::collections::BTreeMap;

use num::Zero;

use crate::error::{PolyError, Result};
use crate::poly::DiffPoly;
use crate::scalar::{factorial, Scalar};
use crate::univariate::UniPoly;
use crate::var::{Family, Var};

/// A curve germ given coordinatewise by polynomials in `ζ`.
///
/// When `truncation` is `Some(K)` the polynomials are only trusted up to
/// `ζ^K`, so derivatives of order above `K` are unavailable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetGerm {
    /// Coordinate family the germ parametrizes.
    pub family: Family,
    /// Coordinate index ↦ component `φ_j(ζ)`.
    pub coords: BTreeMap<u32, UniPoly>,
    /// Highest reliable order, `None` for exact polynomials.
    pub truncation: Option<u32>,
}

impl JetGerm {
    /// An exact polynomial germ in the inhomogeneous alphabet.
    pub fn inhomogeneous(coords: impl IntoIterator<Item = (u32, UniPoly)>) -> JetGerm {
        JetGerm { family: Family::Inhomogeneous, coords: coords.into_iter().collect(), truncation: None }
    }

    /// An exact polynomial germ in the homogeneous alphabet.
    pub fn homogeneous(coords: impl IntoIterator<Item = (u32, UniPoly)>) -> JetGerm {
        JetGerm { family: Family::Homogeneous, coords: coords.into_iter().collect(), truncation: None }
    }

    /// Same germ, declared reliable only up to order `k`.
    pub fn truncated(mut self, k: u32) -> JetGerm {
        self.truncation = Some(k);
        self
    }
}

/// Substitutes `d^ℓ x_j ↦ φ_j^(ℓ)(ζ0)` and evaluates exactly.
pub fn evaluate_at_jet(p: &DiffPoly, germ: &JetGerm, zeta0: &Scalar) -> Result<Scalar> {
    let needed = p.max_order();
    if let Some(k) = germ.truncation {
        if needed > k {
            return Err(PolyError::InsufficientTruncation { needed, available: k });
        }
    }
    let mut shifted: BTreeMap<u32, UniPoly> = BTreeMap::new();
    for v in p.variables() {
        let index = match (&v, germ.family) {
            (Var::X { index, .. }, Family::Inhomogeneous) | (Var::Z { index, .. }, Family::Homogeneous) => *index,
            _ => return Err(PolyError::UnsupportedVariable(v.to_string())),
        };
        if !shifted.contains_key(&index) {
            let phi = germ.coords.get(&index).ok_or_else(|| PolyError::MissingCoordinate(v.to_string()))?;
            shifted.insert(index, phi.shift(zeta0));
        }
    }
    p.evaluate(&|v: &Var| {
        let (order, index) = match v {
            Var::X { order, index } | Var::Z { order, index } => (*order, *index),
            _ => return None,
        };
        let s = shifted.get(&index)?;
        let c = s.coeff(order as usize);
        if c.is_zero() {
            return Some(c);
        }
        Some(c * factorial(order))
    })
}
