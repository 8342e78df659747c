//! Exact dimension counts: sections on a complete intersection, weighted
//! monomial counts, and the sufficient inequality for a nontrivial solution.

use core_poly::{binomial, binomial_big, DiffPoly, Monomial, MultiIndex, Scalar, Var};
use num::{BigInt, BigRational, One, ToPrimitive, Zero};

use crate::elimination::MonomialIndex;
use crate::error::{JetError, Result};
use crate::linalg::echelonize;

/// The double binomial sum together with its closed-form upper bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionCount {
    /// `Σ_{j=1}^{δ} Σ_{k=1}^{s} C(n+q−j−k, n−2)`.
    pub value: BigInt,
    /// `s·δ·(n+q−2)^{n−2}/(n−2)!`.
    pub upper_bound: BigRational,
}

fn factorial_big(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// Dimension of the degree-`q` sections on the intersection of
/// hypersurfaces of degrees `δ` and `s` in `ℙ_n`.
pub fn dim_sections_on_s(n: u32, delta: u32, s: u32, q: u32) -> Result<DimensionCount> {
    if n < 3 {
        return Err(JetError::RangeViolation(format!("dimension n = {n} must be at least 3")));
    }
    if delta == 0 || s == 0 {
        return Err(JetError::RangeViolation("degrees must be positive".into()));
    }
    if q < delta + s + n {
        return Err(JetError::RangeViolation(format!("q = {q} is below delta + s + n = {}", delta + s + n)));
    }
    let mut value = BigInt::zero();
    for j in 1..=delta {
        for k in 1..=s {
            value += binomial((n + q - j - k) as u64, (n - 2) as u64);
        }
    }
    let numerator = BigInt::from(s) * BigInt::from(delta) * num::pow(BigInt::from(n + q - 2), (n - 2) as usize);
    let upper_bound = BigRational::new(numerator, factorial_big((n - 2) as u64));
    Ok(DimensionCount { value, upper_bound })
}

/// All monomials of degree exactly `d` in `z_0, …, z_n`.
pub fn z_monomials(n: u32, d: u32) -> Vec<Monomial> {
    MultiIndex::all_of_degree(n as usize + 1, d)
        .into_iter()
        .map(|a| Monomial::from_pairs(a.components().iter().enumerate().map(|(i, e)| (Var::z(i as u32), *e))))
        .collect()
}

/// `dim (ℚ[z_0..z_n]/(f, g))_q` for homogeneous `f`, `g`, computed as the
/// number of degree-`q` monomials minus the rank of
/// `{f·z^a, g·z^b}` in degree `q`.
pub fn dimension_by_rank(f: &DiffPoly, g: &DiffPoly, n: u32, q: u32) -> usize {
    let mut index = MonomialIndex::default();
    let mut rows = Vec::new();
    for h in [f, g] {
        let d = h.total_degree();
        if d > q {
            continue;
        }
        for m in z_monomials(n, q - d) {
            rows.push(index.vector(&h.mul_term(&m, &Scalar::one())));
        }
    }
    let total = binomial((q + n) as u64, n as u64).to_usize().expect("small count");
    total - echelonize(rows).rank()
}

/// Bounds on the number of solutions of `Σ n_j k_j = m` for weights
/// `1 = n_1 ≤ … ≤ n_r`: `C(⌊m/n_r⌋+r−1, r−1)` and `C(m+r−1, r−1)`.
pub fn monomial_count_bounds(m: u32, weights: &[u32]) -> Result<(BigInt, BigInt)> {
    if weights.first() != Some(&1) {
        return Err(JetError::RangeViolation("the smallest weight must be 1".into()));
    }
    if weights.windows(2).any(|w| w[0] > w[1]) {
        return Err(JetError::RangeViolation("weights must be nondecreasing".into()));
    }
    let r = weights.len() as u64;
    let top = *weights.last().expect("nonempty") as u64;
    let lower = binomial(m as u64 / top + r - 1, r - 1);
    let upper = binomial(m as u64 + r - 1, r - 1);
    Ok((lower, upper))
}

/// Both sides of the sufficient inequality for a nontrivial jet
/// differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Feasibility {
    /// `C(m0+n, n)·C(⌊m/(n−1)⌋ + n(n−1) − 1, n(n−1) − 1)`.
    pub lhs: BigInt,
    /// `(δ−1)δ(m0 + (n−1)!·2m(δ−1))^{n−2}/(n−2)! · C(m+(n−1)²−1, (n−1)²−1)`.
    pub rhs: BigRational,
    /// `lhs > rhs`.
    pub feasible: bool,
}

/// Evaluates the sufficient inequality exactly. Requires `n ≥ 2` and
/// `m0 + 2m < δ`.
pub fn feasibility_check(n: u32, delta: &BigInt, m0: &BigInt, m: &BigInt) -> Result<Feasibility> {
    if n < 2 {
        return Err(JetError::RangeViolation(format!("dimension n = {n} must be at least 2")));
    }
    let lhs_grading = m0 + BigInt::from(2) * m;
    if &lhs_grading >= delta {
        return Err(JetError::GradingViolation { lhs: lhs_grading, delta: delta.clone() });
    }
    let n64 = n as u64;
    let lhs = binomial_big(&(m0 + BigInt::from(n)), n64)
        * binomial_big(&(m / BigInt::from(n - 1) + BigInt::from(n64 * (n64 - 1) - 1)), n64 * (n64 - 1) - 1);
    let big_n = factorial_big(n64 - 1) * BigInt::from(2) * m;
    let base = m0 + &big_n * (delta - BigInt::one());
    let sq = (n64 - 1) * (n64 - 1);
    let numerator = (delta - BigInt::one())
        * delta
        * num::pow(base, (n - 2) as usize)
        * binomial_big(&(m + BigInt::from(sq - 1)), sq - 1);
    let rhs = BigRational::new(numerator, factorial_big(n64 - 2));
    let feasible = BigRational::from_integer(lhs.clone()) > rhs;
    Ok(Feasibility { lhs, rhs, feasible })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core_poly::parse_poly;

    #[test]
    fn double_sum_examples() {
        assert_eq!(dim_sections_on_s(3, 1, 1, 7).unwrap().value, BigInt::from(8));
        let c = dim_sections_on_s(3, 2, 1, 8).unwrap();
        assert_eq!(c.value, BigInt::from(17));
        assert_eq!(c.upper_bound, BigRational::from_integer(BigInt::from(18)));
        assert!(matches!(dim_sections_on_s(3, 2, 1, 5), Err(JetError::RangeViolation(_))));
    }

    #[test]
    fn rank_dimension_of_a_line() {
        let f = parse_poly("z0 - z1").unwrap();
        let g = parse_poly("z2 + 2*z3").unwrap();
        assert_eq!(dimension_by_rank(&f, &g, 3, 7), 8);
    }

    #[test]
    fn count_bound_examples() {
        assert_eq!(monomial_count_bounds(0, &[1, 2]).unwrap(), (BigInt::one(), BigInt::one()));
        assert_eq!(monomial_count_bounds(4, &[1, 2]).unwrap(), (BigInt::from(3), BigInt::from(5)));
        assert_eq!(monomial_count_bounds(6, &[1, 2, 3]).unwrap(), (BigInt::from(6), BigInt::from(28)));
        assert!(monomial_count_bounds(3, &[2, 3]).is_err());
    }

    #[test]
    fn feasibility_examples() {
        let b = |v: i64| BigInt::from(v);
        let tiny = feasibility_check(3, &b(10), &b(2), &b(2)).unwrap();
        assert!(!tiny.feasible);
        assert_eq!(tiny.lhs, b(10 * 6));
        assert_eq!(tiny.rhs, BigRational::from_integer(b(9 * 10 * 74 * 10)));
        assert_eq!(
            feasibility_check(3, &b(6), &b(2), &b(2)),
            Err(JetError::GradingViolation { lhs: b(6), delta: b(6) })
        );
    }
}
