//! Elimination of `d^ℓx_1` from the jets of `X = {f = 0}`.
//!
//! Differentiating `f = 0` gives `f_{x1}·d^ℓx_1 = Q_ℓ` with
//! `Q_ℓ = −(d^ℓf − f_{x1}·d^ℓx_1)`, which involves `d^j x_1` only for
//! `j < ℓ`. Substituting `d^j x_1 = P_j / f_{x1}^{κ_j}` recursively and
//! clearing denominators gives `f_{x1}^{κ_ℓ}·d^ℓx_1 ≡ P_ℓ` with `P_ℓ`
//! free of `x_1`-differentials, where
//! `κ_ℓ = 1 + max { Σ_j κ_j s_j : Σ_j j·s_j ≤ ℓ, j < ℓ }`.

use std::collections::BTreeMap;

use core_poly::scalar::int;
use core_poly::{DiffPoly, Monomial, MultiIndex, Scalar, Var};
use jetfiber::UniversalPoly;
use num::{One, Signed};

use crate::error::{JetError, Result};
use crate::linalg::{echelonize, integer_vector, Echelon};

/// One row of the elimination table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationRow {
    /// Differential order `ℓ`.
    pub ell: u32,
    /// Power of `f_{x1}` clearing the denominator of `d^ℓx_1`.
    pub kappa: u32,
    /// `P_ℓ`, a polynomial in `x` and `d^j x_r` with `r ≥ 2`, `j ≤ ℓ`.
    pub p: DiffPoly,
    /// `c_i` with `f_{x1}^{κ_ℓ}·d^ℓx_1 − P_ℓ = Σ_{i=0}^{ℓ} c_i·d^i f`.
    pub cofactors: Vec<DiffPoly>,
}

/// `κ_ℓ` and `P_ℓ` for `ℓ = 1..k` together with membership cofactors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliminationTable {
    /// Number of affine coordinates.
    pub n: u32,
    /// The affine polynomial `f(x_1, …, x_n)`.
    pub f: DiffPoly,
    /// `∂f/∂x_1`.
    pub f_x1: DiffPoly,
    /// Rows for `ℓ = 1..k` in order.
    pub rows: Vec<EliminationRow>,
}

fn is_dx1(v: &Var) -> bool {
    matches!(v, Var::X { order, index: 1 } if *order >= 1)
}

/// Exponents `s_j` of `d^j x_1` in a monomial, indexed by `j − 1`.
fn dx1_exponents(m: &Monomial) -> Vec<(u32, u32)> {
    m.factors()
        .iter()
        .filter_map(|(v, e)| match v {
            Var::X { order, index: 1 } if *order >= 1 => Some((*order, *e)),
            _ => None,
        })
        .collect()
}

/// The recursion `κ_1 = 1`, `κ_ℓ = 1 + max Σ κ_j s_j` over
/// `Σ j·s_j ≤ ℓ` with `j < ℓ`, for `ℓ = 1..k`.
pub fn kappa_recursion(k: u32) -> Vec<u32> {
    let mut kappa: Vec<u32> = Vec::new();
    for ell in 1..=k as usize {
        // best[w] = max Σ κ_j s_j over Σ j s_j ≤ w using j < ℓ (unbounded knapsack).
        let mut best = vec![0u32; ell + 1];
        for w in 1..=ell {
            best[w] = best[w - 1];
            for j in 1..ell.min(w + 1) {
                best[w] = best[w].max(best[w - j] + kappa[j - 1]);
            }
        }
        kappa.push(1 + best[ell]);
    }
    kappa
}

/// The largest `Σ κ_j s_j` over monomials `Π (d^j x_1)^{s_j}` of weight at
/// most `m`: the power of `f_{x1}` needed to clear a weight-`m` jet
/// polynomial after elimination.
pub fn required_power(kappa: &[u32], m: u32) -> u32 {
    let m = m as usize;
    let mut best = vec![0u32; m + 1];
    for w in 1..=m {
        best[w] = best[w - 1];
        for (j, k) in kappa.iter().enumerate().take(w) {
            best[w] = best[w].max(best[w - j - 1] + k);
        }
    }
    best[m]
}

/// The affine polynomial `f(1, x_1, …, x_n)` of a concrete homogeneous `f`.
pub fn affine_part(f: &UniversalPoly) -> DiffPoly {
    let hom = f.to_poly();
    hom.substitute_with(&|v: &Var| match v {
        Var::Z { order: 0, index: 0 } => Some(DiffPoly::one()),
        Var::Z { order: 0, index } => Some(DiffPoly::var(Var::x(*index))),
        _ => None,
    })
}

/// The Fermat polynomial `z_1^δ + … + z_n^δ − z_0^δ`.
pub fn fermat(n: u32, delta: u32) -> UniversalPoly {
    let size = n as usize + 1;
    let mut coeffs = vec![(MultiIndex::new((0..size).map(|i| if i == 0 { delta } else { 0 })), int(-1))];
    for j in 1..size {
        coeffs.push((MultiIndex::new((0..size).map(|i| if i == j { delta } else { 0 })), int(1)));
    }
    UniversalPoly::concrete(n, delta, coeffs).expect("Fermat coefficients are valid")
}

/// Checks that `f` only involves `x_1, …, x_n`.
pub fn check_affine(f: &DiffPoly, n: u32) -> Result<()> {
    match f.variables().into_iter().find(|v| !matches!(v, Var::X { order: 0, index } if (1..=n).contains(index))) {
        Some(v) => Err(JetError::AlphabetMismatch(format!("{v} is not one of x1..x{n}"))),
        None => Ok(()),
    }
}

/// Product `u_1⋯u_t − v_1⋯v_t` expanded as
/// `Σ_i u_1⋯u_{i−1}·(u_i − v_i)·v_{i+1}⋯v_t`, with `u_i − v_i` given by its
/// cofactor vector; returns the cofactor vector of the difference.
fn telescope(u: &[DiffPoly], v: &[DiffPoly], diffs: &[&Vec<DiffPoly>], len: usize) -> Vec<DiffPoly> {
    let t = u.len();
    let mut suffix = vec![DiffPoly::one(); t + 1];
    for i in (0..t).rev() {
        suffix[i] = &v[i] * &suffix[i + 1];
    }
    let mut out = vec![DiffPoly::zero(); len];
    let mut prefix = DiffPoly::one();
    for i in 0..t {
        let around = &prefix * &suffix[i + 1];
        for (slot, c) in out.iter_mut().zip(diffs[i].iter()) {
            if !c.is_zero() {
                *slot += &around * c;
            }
        }
        prefix = &prefix * &u[i];
    }
    out
}

/// Builds the elimination table up to order `k`.
pub fn eliminate_dx1(f: &DiffPoly, n: u32, k: u32) -> Result<EliminationTable> {
    check_affine(f, n)?;
    let f_x1 = f.partial(&Var::x(1));
    if f_x1.is_zero() {
        return Err(JetError::DegenerateF);
    }
    let kappas = kappa_recursion(k);
    let mut f_x1_pows = vec![DiffPoly::one()];
    let mut rows: Vec<EliminationRow> = Vec::new();
    for ell in 1..=k {
        let kappa = kappas[ell as usize - 1];
        let top = DiffPoly::var(Var::dx(ell, 1));
        let d_ell_f = f.total_derivative_n(ell);
        let q = -&(&d_ell_f - &(&f_x1 * &top));
        while f_x1_pows.len() <= kappa as usize {
            let next = &f_x1_pows[f_x1_pows.len() - 1] * &f_x1;
            f_x1_pows.push(next);
        }
        let mut p = DiffPoly::zero();
        // f_{x1}^{κ−1}·Q − P as a combination of d^i f.
        let mut cofactors = vec![DiffPoly::zero(); ell as usize + 1];
        cofactors[ell as usize] = f_x1_pows[kappa as usize - 1].clone();
        for (key, rest) in q.collect_by(is_dx1) {
            let exps = dx1_exponents(&key);
            let used: u32 = exps.iter().map(|(j, s)| kappas[*j as usize - 1] * s).sum();
            let spare = &f_x1_pows[(kappa - 1 - used) as usize] * &rest;
            let mut u = Vec::new();
            let mut v = Vec::new();
            let mut diffs = Vec::new();
            for (j, s) in &exps {
                let row = &rows[*j as usize - 1];
                let a = &f_x1_pows[row.kappa as usize] * &DiffPoly::var(Var::dx(*j, 1));
                for _ in 0..*s {
                    u.push(a.clone());
                    v.push(row.p.clone());
                    diffs.push(&row.cofactors);
                }
            }
            let substituted = v.iter().fold(spare.clone(), |acc, b| &acc * b);
            p += substituted;
            for (slot, c) in cofactors.iter_mut().zip(telescope(&u, &v, &diffs, ell as usize + 1)) {
                if !c.is_zero() {
                    *slot += &spare * &c;
                }
            }
        }
        rows.push(EliminationRow { ell, kappa, p, cofactors });
    }
    Ok(EliminationTable { n, f: f.clone(), f_x1, rows })
}

impl EliminationTable {
    /// Highest order in the table.
    pub fn order(&self) -> u32 {
        self.rows.len() as u32
    }

    /// `κ_ℓ` for `ℓ = 1..k`.
    pub fn kappas(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.kappa).collect()
    }

    /// The row of order `ℓ`.
    pub fn row(&self, ell: u32) -> Result<&EliminationRow> {
        self.rows
            .get((ell as usize).wrapping_sub(1))
            .ok_or_else(|| JetError::RangeViolation(format!("order {ell} outside 1..={}", self.order())))
    }

    /// Checks `f_{x1}^{κ_ℓ}·d^ℓx_1 − P_ℓ = Σ c_i·d^i f` by expanding both
    /// sides.
    pub fn verify_row(&self, ell: u32) -> Result<bool> {
        let row = self.row(ell)?;
        let lhs = &(&self.f_x1.pow(row.kappa) * &DiffPoly::var(Var::dx(ell, 1))) - &row.p;
        let mut rhs = DiffPoly::zero();
        let mut d = self.f.clone();
        for c in &row.cofactors {
            rhs += c * &d;
            d = d.total_derivative();
        }
        Ok(lhs == rhs)
    }

    /// True when no `x_1`-differential occurs in `P_ℓ` and its degree in
    /// the base coordinates is at most `κ_ℓ(δ − 1)`.
    pub fn row_is_reduced(&self, ell: u32) -> Result<bool> {
        let row = self.row(ell)?;
        let delta = self.f.total_degree();
        let free = row.p.variables().iter().all(|v| !is_dx1(v));
        let degree = row.p.max_degree_where(|v| matches!(v, Var::X { order: 0, .. }));
        Ok(free && degree <= row.kappa * delta.saturating_sub(1))
    }

    /// `f_{x1}^N·q` with every `d^j x_1` replaced by `P_j / f_{x1}^{κ_j}`.
    pub fn eliminate(&self, q: &DiffPoly, power: u32) -> Result<DiffPoly> {
        let mut pows: BTreeMap<u32, DiffPoly> = BTreeMap::new();
        let mut out = DiffPoly::zero();
        for (key, rest) in q.collect_by(is_dx1) {
            let exps = dx1_exponents(&key);
            let mut used = 0;
            for (j, s) in &exps {
                used += self.row(*j)?.kappa * s;
            }
            if used > power {
                return Err(JetError::InsufficientPower { needed: used, available: power });
            }
            let spare = pows.entry(power - used).or_insert_with(|| self.f_x1.pow(power - used)).clone();
            let mut term = &spare * &rest;
            for (j, s) in &exps {
                term = &term * &self.row(*j)?.p.pow(*s);
            }
            out += term;
        }
        Ok(out)
    }

    /// The smallest power `κ ≤ κ_ℓ` for which `f_{x1}^κ·d^ℓx_1` restricts
    /// to a polynomial on the jets of `X`: the largest `e` such that every
    /// coefficient of `P_ℓ` lies in `(f, f_{x1}^e)` gives `κ_ℓ − e`.
    ///
    /// Membership is tested with cofactors of bounded degree, which decides
    /// it when the leading forms of `f` and `f_{x1}` share no factor.
    pub fn minimal_kappa(&self, ell: u32) -> Result<u32> {
        let row = self.row(ell)?;
        let coefficients: Vec<DiffPoly> = row.p.collect_by(Var::is_differential).into_values().collect();
        let mut e = 0;
        while e < row.kappa {
            let g = self.f_x1.pow(e + 1);
            if !coefficients.iter().all(|c| in_ideal(c, &[&self.f, &g], self.n)) {
                break;
            }
            e += 1;
        }
        Ok(row.kappa - e)
    }
}

/// All monomials of total degree at most `d` in `x_1, …, x_n`.
pub fn x_monomials(n: u32, d: u32) -> Vec<Monomial> {
    MultiIndex::all_up_to_degree(n as usize, d)
        .into_iter()
        .map(|a| Monomial::from_pairs(a.components().iter().enumerate().map(|(i, e)| (Var::x(i as u32 + 1), *e))))
        .collect()
}

/// Assigns column indices to monomials in order of first appearance.
#[derive(Clone, Debug, Default)]
pub struct MonomialIndex {
    map: BTreeMap<Monomial, usize>,
}

impl MonomialIndex {
    /// Index of `m`, allocating a new one when unseen.
    pub fn index(&mut self, m: &Monomial) -> usize {
        let next = self.map.len();
        *self.map.entry(m.clone()).or_insert(next)
    }

    /// Sparse integer vector of a polynomial.
    pub fn vector(&mut self, p: &DiffPoly) -> crate::linalg::SparseVec {
        let entries: Vec<(usize, &Scalar)> = p.terms().map(|(m, c)| (self.index(m), c)).collect();
        integer_vector(entries)
    }
}

/// The span of `g·x^a` over generators `g` and exponents with
/// `deg(g·x^a) ≤ d`.
pub fn truncated_ideal(gens: &[&DiffPoly], n: u32, d: u32, index: &mut MonomialIndex) -> Echelon {
    let mut rows = Vec::new();
    for g in gens {
        let dg = g.total_degree();
        if dg > d {
            continue;
        }
        for m in x_monomials(n, d - dg) {
            rows.push(index.vector(&g.mul_term(&m, &Scalar::one())));
        }
    }
    echelonize(rows)
}

/// Whether `c = Σ a_i g_i` with `deg(a_i g_i) ≤ deg c`.
pub fn in_ideal(c: &DiffPoly, gens: &[&DiffPoly], n: u32) -> bool {
    if c.is_zero() {
        return true;
    }
    let mut index = MonomialIndex::default();
    let echelon = truncated_ideal(gens, n, c.total_degree(), &mut index);
    echelon.reduce(index.vector(c)).is_empty()
}

/// `κ_ℓ ≤ ℓ!` as an exact comparison.
pub fn within_factorial_bound(kappa: u32, ell: u32) -> bool {
    let fact = core_poly::scalar::factorial(ell);
    !(Scalar::from_integer(kappa.into()) - fact).is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use core_poly::parse_poly;

    #[test]
    fn kappa_recursion_values() {
        assert_eq!(kappa_recursion(4), vec![1, 3, 5, 7]);
        assert_eq!(required_power(&[1], 3), 3);
        assert_eq!(required_power(&[1, 3], 2), 3);
        assert_eq!(required_power(&[1, 3], 0), 0);
    }

    #[test]
    fn first_row_is_the_gradient_identity() {
        let f = parse_poly("x1^3 + x2^3 + x3^3 - 1").unwrap();
        let table = eliminate_dx1(&f, 3, 1).unwrap();
        let row = table.row(1).unwrap();
        assert_eq!(row.kappa, 1);
        assert_eq!(row.p, parse_poly("-3*x2^2*dx2 - 3*x3^2*dx3").unwrap());
        assert!(table.verify_row(1).unwrap());
        assert_eq!(row.cofactors, vec![DiffPoly::zero(), DiffPoly::one()]);
    }

    #[test]
    fn circle_second_order() {
        let f = parse_poly("x1^2 + x2^2").unwrap();
        let table = eliminate_dx1(&f, 2, 2).unwrap();
        assert!(table.verify_row(2).unwrap());
        assert!(table.row_is_reduced(2).unwrap());
        assert_eq!(table.minimal_kappa(2).unwrap(), 1);
    }

    #[test]
    fn degenerate_and_foreign_inputs() {
        assert_eq!(eliminate_dx1(&parse_poly("x2^2 - 1").unwrap(), 2, 1), Err(JetError::DegenerateF));
        assert!(matches!(eliminate_dx1(&parse_poly("x1 + x3").unwrap(), 2, 1), Err(JetError::AlphabetMismatch(_))));
    }

    #[test]
    fn affine_part_of_fermat() {
        assert_eq!(affine_part(&fermat(2, 3)), parse_poly("x1^3 + x2^3 - 1").unwrap());
    }

    #[test]
    fn elimination_substitutes_lower_rows() {
        let f = parse_poly("x1^2 + x2 - 1").unwrap();
        let table = eliminate_dx1(&f, 2, 1).unwrap();
        let out = table.eliminate(&parse_poly("x2*dx1").unwrap(), 2).unwrap();
        assert_eq!(out, parse_poly("-2*x1*x2*dx2").unwrap());
        assert_eq!(
            table.eliminate(&parse_poly("dx1^2").unwrap(), 1),
            Err(JetError::InsufficientPower { needed: 2, available: 1 })
        );
    }
}
