//! The Cartan form `Wron(dx_1, …, dx_n)/(F_1⋯F_q)` for hyperplanes and its
//! local rewriting through logarithmic differentials.

use std::collections::BTreeMap;

use core_poly::{DiffPoly, Monomial, Scalar, Var};
use num::Zero;
use rand::Rng;

use crate::error::{LogPoleError, Result};
use crate::logdiff::LogPoleJetDiff;
use crate::wronskian::{complete_bell, determinant, wronskian};

/// The coefficients `(c, a_1, …, a_n)` of `F = c + Σ a_j x_j`.
pub fn linear_coefficients(form: &DiffPoly, n: u32) -> Result<Vec<Scalar>> {
    let mut out = vec![Scalar::zero(); n as usize + 1];
    for (m, c) in form.terms() {
        match m.factors() {
            [] => out[0] = c.clone(),
            [(Var::X { order: 0, index }, 1)] if (1..=n).contains(index) => out[*index as usize] = c.clone(),
            _ => return Err(LogPoleError::DegenerateInput(format!("{form} is not of degree one in x1..x{n}"))),
        }
    }
    if out[1..].iter().all(Zero::is_zero) {
        return Err(LogPoleError::DegenerateInput(format!("{form} is constant")));
    }
    Ok(out)
}

/// Rank of a dense rational matrix.
pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            if !row[c].is_zero() {
                let factor = &row[c] / &pivot[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &factor * y;
                }
            }
        }
        r += 1;
    }
    r
}

fn subsets(len: usize, size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![Vec::new()];
    }
    if len < size {
        return Vec::new();
    }
    let mut out = subsets(len - 1, size);
    for mut s in subsets(len - 1, size - 1) {
        s.push(len - 1);
        out.push(s);
    }
    out
}

/// Whether the hyperplanes `F_j = 0` in `ℙ_n` are in general position:
/// every `min(q, n+1)` of the homogeneous coefficient vectors are linearly
/// independent.
pub fn in_general_position(forms: &[DiffPoly], n: u32) -> Result<bool> {
    let vectors = forms.iter().map(|f| linear_coefficients(f, n)).collect::<Result<Vec<_>>>()?;
    let size = forms.len().min(n as usize + 1);
    Ok(subsets(forms.len(), size).into_iter().all(|s| rank(s.iter().map(|&i| vectors[i].clone()).collect()) == size))
}

/// `q` random integer degree-one forms in general position.
pub fn random_general_position(n: u32, q: usize, rng: &mut impl Rng) -> Vec<DiffPoly> {
    loop {
        let forms: Vec<DiffPoly> = (0..q)
            .map(|_| {
                let mut f = DiffPoly::int(rng.gen_range(-5..=5));
                for j in 1..=n {
                    f.add_term(Monomial::var(Var::x(j)), core_poly::scalar::int(rng.gen_range(-5..=5)));
                }
                f
            })
            .collect();
        if in_general_position(&forms, n).unwrap_or(false) {
            return forms;
        }
    }
}

fn registry(forms: &[DiffPoly]) -> BTreeMap<u32, DiffPoly> {
    forms.iter().enumerate().map(|(i, f)| (i as u32 + 1, f.clone())).collect()
}

fn dx_wronskian(n: u32) -> Result<DiffPoly> {
    wronskian(&(1..=n).map(|j| DiffPoly::var(Var::dx(1, j))).collect::<Vec<_>>())
}

/// `ω = Wron(dx_1, …, dx_n)/(F_1⋯F_q)` with the forms registered as
/// `F_1, …, F_q`.
pub fn cartan_form(forms: &[DiffPoly], n: u32) -> Result<LogPoleJetDiff> {
    if forms.len() < n as usize {
        return Err(LogPoleError::TooFewForms { q: forms.len(), n });
    }
    let vectors = forms.iter().map(|f| linear_coefficients(f, n)).collect::<Result<Vec<_>>>()?;
    for s in subsets(forms.len(), 2) {
        if rank(vec![vectors[s[0]].clone(), vectors[s[1]].clone()]) < 2 {
            return Err(LogPoleError::Proportional(s[0] + 1, s[1] + 1));
        }
    }
    let denominator = (1..=forms.len() as u32).map(|i| (i, 1)).collect();
    LogPoleJetDiff::new(dx_wronskian(n)?, registry(forms), denominator, n)
}

fn check_subset(forms: &[DiffPoly], subset: &[usize], n: u32) -> Result<Vec<Vec<Scalar>>> {
    if subset.len() != n as usize {
        return Err(LogPoleError::DependentSubset(format!("{} indices for dimension {n}", subset.len())));
    }
    let mut seen = subset.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != subset.len() || subset.iter().any(|&i| i == 0 || i > forms.len()) {
        return Err(LogPoleError::DependentSubset(format!("indices {subset:?} are not distinct in 1..={}", forms.len())));
    }
    let linear = subset
        .iter()
        .map(|&i| linear_coefficients(&forms[i - 1], n).map(|v| v[1..].to_vec()))
        .collect::<Result<Vec<_>>>()?;
    if rank(linear.clone()) < n as usize {
        return Err(LogPoleError::DependentSubset(format!("the linear parts of {subset:?} are dependent")));
    }
    Ok(linear)
}

/// The last `n`-element subset, in reverse lexicographic order of
/// 1-based indices, whose linear parts are independent.
pub fn independent_subset(forms: &[DiffPoly], n: u32) -> Option<Vec<usize>> {
    let mut all = subsets(forms.len(), n as usize);
    all.reverse();
    all.into_iter()
        .map(|s| s.into_iter().map(|i| i + 1).collect::<Vec<_>>())
        .find(|s| check_subset(forms, s, n).is_ok())
}

fn rest_denominator(forms: &[DiffPoly], subset: &[usize]) -> BTreeMap<u32, u32> {
    (1..=forms.len()).filter(|i| !subset.contains(i)).map(|i| (i as u32, 1)).collect()
}

/// `Wron(dF_{ν_1}, …, dF_{ν_n})/(F_1⋯F_q)` for 1-based indices `ν`.
pub fn subset_wronskian_form(forms: &[DiffPoly], subset: &[usize], n: u32) -> Result<LogPoleJetDiff> {
    check_subset(forms, subset, n)?;
    let entries: Vec<DiffPoly> = subset.iter().map(|&i| forms[i - 1].total_derivative()).collect();
    let denominator = (1..=forms.len() as u32).map(|i| (i, 1)).collect();
    LogPoleJetDiff::new(wronskian(&entries)?, registry(forms), denominator, n)
}

/// `det(d^λ F_{ν_j} / F_{ν_j}) / (F_{ν_{n+1}}⋯F_{ν_q})`, where each entry
/// `d^λ F/F` is the complete Bell polynomial in `d log F, …, d^λ log F`.
pub fn cartan_log_form(forms: &[DiffPoly], subset: &[usize], n: u32) -> Result<LogPoleJetDiff> {
    check_subset(forms, subset, n)?;
    let matrix: Vec<Vec<DiffPoly>> = (1..=n)
        .map(|lambda| subset.iter().map(|&i| complete_bell(lambda, &|l| Var::log_f(i as u32, l))).collect())
        .collect();
    LogPoleJetDiff::new(determinant(&matrix), registry(forms), rest_denominator(forms, subset), n)
}

/// `Wron(d log F_{ν_1}, …, d log F_{ν_n}) / (F_{ν_{n+1}}⋯F_{ν_q})` with the
/// Wronskian taken literally, row `λ` holding `d^{λ−1}(d log F) = Λ^(λ)`.
pub fn literal_log_wronskian_form(forms: &[DiffPoly], subset: &[usize], n: u32) -> Result<LogPoleJetDiff> {
    check_subset(forms, subset, n)?;
    let entries: Vec<DiffPoly> = subset.iter().map(|&i| DiffPoly::var(Var::log_f(i as u32, 1))).collect();
    LogPoleJetDiff::new(wronskian(&entries)?, registry(forms), rest_denominator(forms, subset), n)
}

/// The constant `c = det(a_{ν_i, j})` with `Wron(dF_ν) = c·Wron(dx)`.
pub fn wronskian_constant(forms: &[DiffPoly], subset: &[usize], n: u32) -> Result<Scalar> {
    let linear = check_subset(forms, subset, n)?;
    let matrix: Vec<Vec<DiffPoly>> =
        linear.iter().map(|row| row.iter().map(|a| DiffPoly::constant(a.clone())).collect()).collect();
    Ok(determinant(&matrix).as_constant().unwrap_or_else(Scalar::zero))
}

/// Verifies exactly that `Wron(dF_ν) = c·Wron(dx)` with `c ≠ 0` and that
/// `Wron(dF_ν)/(F_1⋯F_q)` equals [`cartan_log_form`] as rational
/// expressions.
pub fn verify_cartan_rewrite(forms: &[DiffPoly], subset: &[usize], n: u32) -> Result<bool> {
    let lhs = subset_wronskian_form(forms, subset, n)?;
    let c = wronskian_constant(forms, subset, n)?;
    let constant_holds = !c.is_zero() && lhs.body == dx_wronskian(n)?.scale(&c);
    let rewrite_holds = lhs.same_expression(&cartan_log_form(forms, subset, n)?);
    Ok(constant_holds && rewrite_holds)
}

/// Whether the literal reading [`literal_log_wronskian_form`] equals
/// `Wron(dF_ν)/(F_1⋯F_q)`.
pub fn literal_rewrite_holds(forms: &[DiffPoly], subset: &[usize], n: u32) -> Result<bool> {
    Ok(subset_wronskian_form(forms, subset, n)?.same_expression(&literal_log_wronskian_form(forms, subset, n)?))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::logdiff::logpole_divisor_bound;
    use core_poly::parse_poly;

    fn forms(list: &[&str]) -> Vec<DiffPoly> {
        list.iter().map(|s| parse_poly(s).unwrap()).collect()
    }

    #[test]
    fn classical_one_dimensional_form() {
        let omega = cartan_form(&forms(&["x1", "x1 - 1"]), 1).unwrap();
        assert_eq!(omega.body, parse_poly("dx1").unwrap());
        assert_eq!(omega.denominator, BTreeMap::from([(1, 1), (2, 1)]));
        assert!(verify_cartan_rewrite(&forms(&["x1", "x1 - 1"]), &[1], 1).unwrap());
        assert!(literal_rewrite_holds(&forms(&["x1", "x1 - 1"]), &[1], 1).unwrap());
    }

    #[test]
    fn plane_forms() {
        let f = forms(&["x1", "x2", "x1 + x2 + 1"]);
        let omega = cartan_form(&f, 2).unwrap();
        assert_eq!(omega.weight(), 3);
        assert_eq!(logpole_divisor_bound(&omega), BTreeMap::from([(1, 1), (2, 1), (3, 1)]));
        let four = forms(&["x1", "x2", "x1 + x2 + 1", "x1 - x2 + 2"]);
        assert!(verify_cartan_rewrite(&four, &[3, 4], 2).unwrap());
        assert!(!literal_rewrite_holds(&four, &[3, 4], 2).unwrap());
        assert_eq!(wronskian_constant(&four, &[3, 4], 2).unwrap(), core_poly::scalar::int(-2));
    }

    #[test]
    fn invalid_inputs() {
        assert!(matches!(cartan_form(&forms(&["x1", "3"]), 1), Err(LogPoleError::DegenerateInput(_))));
        assert_eq!(cartan_form(&forms(&["x1", "2*x1"]), 1), Err(LogPoleError::Proportional(1, 2)));
        assert_eq!(cartan_form(&forms(&["x1"]), 2), Err(LogPoleError::TooFewForms { q: 1, n: 2 }));
        let dependent = forms(&["x1 + x2", "2*x1 + 2*x2 + 1", "x2"]);
        assert!(matches!(verify_cartan_rewrite(&dependent, &[1, 2], 2), Err(LogPoleError::DependentSubset(_))));
        assert!(!in_general_position(&forms(&["x1", "x2", "x1 + x2"]), 2).unwrap());
        assert!(in_general_position(&forms(&["x1", "x2", "x1 + x2 + 1"]), 2).unwrap());
    }
}
