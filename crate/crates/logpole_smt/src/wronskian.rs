//! Determinants by permutation expansion, Wronskians and the rewriting of
//! higher differentials through logarithmic differentials.

use core_poly::{DiffPoly, Var};

use crate::error::{LogPoleError, Result};

/// All permutations of `0..k` with their signs, in lexicographic order.
pub fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(prefix: &mut Vec<usize>, rest: &mut Vec<usize>, sign: i64, out: &mut Vec<(Vec<usize>, i64)>) {
        if rest.is_empty() {
            out.push((prefix.clone(), sign));
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            prefix.push(v);
            rec(prefix, rest, if i % 2 == 0 { sign } else { -sign }, out);
            prefix.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut (0..k).collect(), 1, &mut out);
    out
}

/// `det(m)` of a square matrix of polynomials, expanded over permutations:
/// `Σ_σ sgn σ · Π_λ m[λ][σ(λ)]`.
pub fn determinant(m: &[Vec<DiffPoly>]) -> DiffPoly {
    let mut out = DiffPoly::zero();
    for (sigma, sign) in signed_permutations(m.len()) {
        let mut term = DiffPoly::int(sign);
        for (row, &col) in m.iter().zip(&sigma) {
            term = &term * &row[col];
            if term.is_zero() {
                break;
            }
        }
        out += term;
    }
    out
}

/// `Wron(η_1, …, η_ℓ) = det(d^{λ−1} η_j)`.
pub fn wronskian(entries: &[DiffPoly]) -> Result<DiffPoly> {
    if entries.is_empty() {
        return Err(LogPoleError::EmptyInput);
    }
    let mut rows = vec![entries.to_vec()];
    for _ in 1..entries.len() {
        let next = rows.last().expect("nonempty").iter().map(DiffPoly::total_derivative).collect();
        rows.push(next);
    }
    Ok(determinant(&rows))
}

/// The complete Bell polynomial `B_j(y_1, …, y_j)` with `y_l = symbol(l)`,
/// so that `d^j e^u / e^u = B_j(du, …, d^j u)`. Built from `B_0 = 1` and
/// `B_{j+1} = d B_j + y_1 B_j` with `d y_l = y_{l+1}`.
pub fn complete_bell(j: u32, symbol: &dyn Fn(u32) -> Var) -> DiffPoly {
    let mut b = DiffPoly::one();
    let y1 = DiffPoly::var(symbol(1));
    for _ in 0..j {
        let db = b.derive_with(&|v: &Var| match (1..=j).find(|l| symbol(*l) == *v) {
            Some(l) => DiffPoly::var(symbol(l + 1)),
            None => DiffPoly::zero(),
        });
        b = &db + &(&y1 * &b);
    }
    b
}

/// `d^j x_i` written as `x_i · B_j(d log x_i, …, d^j log x_i)`.
pub fn dx_in_dlog(j: u32, i: u32) -> DiffPoly {
    &DiffPoly::var(Var::x(i)) * &complete_bell(j, &|l| Var::log_x(l, i))
}

/// The numerator `N_j` of `d^j log F = N_j / F^j`: `N_1 = dF` and
/// `N_{j+1} = F·dN_j − j·N_j·dF`.
pub fn dlog_numerator(f: &DiffPoly, j: u32) -> DiffPoly {
    let df = f.total_derivative();
    let mut num = df.clone();
    for l in 1..j {
        num = &(f * &num.total_derivative()) - &(&num * &df).scale(&core_poly::scalar::int(l as i64));
    }
    num
}

/// Checks `d^j x = x·B_j(d log x, …)` after substituting
/// `d^l log x = N_l / x^l` and clearing `x^j`.
pub fn verify_dlog_rewrite(j: u32) -> bool {
    let x = DiffPoly::var(Var::x(1));
    let numerators: Vec<DiffPoly> = (0..=j).map(|l| if l == 0 { DiffPoly::one() } else { dlog_numerator(&x, l) }).collect();
    let cleared = dx_in_dlog(j, 1).substitute_with(&|v: &Var| match v {
        Var::LogX { order, index: 1 } => Some(numerators[*order as usize].clone()),
        _ => None,
    });
    cleared == &x.pow(j) * &DiffPoly::var(Var::dx(j, 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core_poly::parse_poly;

    #[test]
    fn small_wronskians() {
        let p = |s: &str| parse_poly(s).unwrap();
        assert_eq!(wronskian(&[p("x1*dx2")]).unwrap(), p("x1*dx2"));
        assert!(wronskian(&[p("dx1"), p("dx1")]).unwrap().is_zero());
        assert_eq!(wronskian(&[p("dx1"), p("dx2")]).unwrap(), p("dx1*d2x2 - dx2*d2x1"));
        assert_eq!(wronskian(&[]), Err(LogPoleError::EmptyInput));
    }

    #[test]
    fn permutation_signs() {
        let perms = signed_permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().map(|(_, s)| s).sum::<i64>(), 0);
        assert!(perms.contains(&(vec![1, 0, 2], -1)));
        assert!(perms.contains(&(vec![1, 2, 0], 1)));
    }

    #[test]
    fn low_order_rewrites() {
        assert_eq!(dx_in_dlog(1, 1), parse_poly("x1*lx1_1").unwrap());
        assert_eq!(dx_in_dlog(2, 1), parse_poly("x1*lx1_1^2 + x1*lx2_1").unwrap());
        assert_eq!(dlog_numerator(&parse_poly("x1").unwrap(), 2), parse_poly("x1*d2x1 - dx1^2").unwrap());
        assert!((1..=4).all(verify_dlog_rewrite));
    }
}
