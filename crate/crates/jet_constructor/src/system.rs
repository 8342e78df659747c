//! Assembly of the linear system for jet differentials vanishing on
//! `S = {f = 0, f_{x1} = 1}`.
//!
//! The unknown is `Q = Σ q_u·u` over monomials `u = x^a·M` with `|a| ≤ m0`
//! and `M` a monomial of weight exactly `m` in `d^j x_ℓ`, `1 ≤ j ≤ n−1`.
//! After multiplying by `f_{x1}^N` and eliminating the `x_1`-differentials,
//! `f_{x1}^N·Q = Σ_G c_G(x)·G` over monomials `G` in `d^j x_r` with `r ≥ 2`.
//! Each `c_G` must lie in `(f, f_{x1} − 1)`; this is imposed linearly as
//! `c_G = a_G·f + b_G·(f_{x1} − 1)` with `deg a_G = D − δ` and
//! `deg b_G = D − δ + 1`, where `D = m0 + N(δ − 1)`.

use std::collections::BTreeMap;
use std::fmt;

use core_poly::{DiffPoly, Monomial, Scalar, Var};
use num::{One, Zero};

use crate::elimination::{check_affine, eliminate_dx1, required_power, x_monomials, EliminationTable};
use crate::error::{JetError, Result};
use crate::linalg::{integer_vector, projected_nullspace, SparseVec};

/// The label of one unknown.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Column {
    /// Coefficient of a monomial of `Q`.
    Q(Monomial),
    /// Coefficient of `x^a` in the multiplier of `f` for group `G`.
    CofactorF { group: Monomial, x: Monomial },
    /// Coefficient of `x^a` in the multiplier of `f_{x1} − 1` for group `G`.
    CofactorShift { group: Monomial, x: Monomial },
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Column::Q(m) => write!(f, "q[{m}]"),
            Column::CofactorF { group, x } => write!(f, "a[{group}][{x}]"),
            Column::CofactorShift { group, x } => write!(f, "b[{group}][{x}]"),
        }
    }
}

/// Options for the assembly.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AssemblyOptions {
    /// Use the smallest power of `f_{x1}` clearing all eliminated
    /// denominators instead of `N = (n−1)!·2m`.
    pub minimal_power: bool,
}

/// The homogeneous linear system with labeled rows and columns. The first
/// `num_q_columns` columns are the coefficients of `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseLinearSystem {
    /// Number of affine coordinates.
    pub n: u32,
    /// Degree of `f`.
    pub delta: u32,
    /// Degree bound of `Q` in the base coordinates.
    pub m0: u32,
    /// Weight of `Q`.
    pub m: u32,
    /// Power `N` of `f_{x1}`.
    pub power: u32,
    /// Degree bound `D` of the eliminated coefficients.
    pub degree_bound: u32,
    /// Column labels.
    pub columns: Vec<Column>,
    /// Number of `Q` columns.
    pub num_q_columns: usize,
    /// Primitive integer rows.
    pub rows: Vec<SparseVec>,
    /// One label per row naming the group and the coefficient it equates.
    pub row_labels: Vec<String>,
}

/// `(n−1)!·2m`.
pub fn default_power(n: u32, m: u32) -> u32 {
    (1..n).product::<u32>() * 2 * m
}

/// All monomials of weight exactly `m` in `d^j x_ℓ` for `1 ≤ j ≤ max_order`
/// and `ℓ` in `indices`.
pub fn weighted_monomials(indices: &[u32], max_order: u32, m: u32) -> Vec<Monomial> {
    let vars: Vec<Var> = (1..=max_order).flat_map(|j| indices.iter().map(move |l| Var::dx(j, *l))).collect();
    let mut out = Vec::new();
    let mut exps = vec![0u32; vars.len()];
    fn rec(vars: &[Var], exps: &mut Vec<u32>, i: usize, left: u32, out: &mut Vec<Monomial>) {
        if i == vars.len() {
            if left == 0 {
                out.push(Monomial::from_pairs(vars.iter().cloned().zip(exps.iter().copied())));
            }
            return;
        }
        let w = vars[i].weight();
        for e in 0..=left / w {
            exps[i] = e;
            rec(vars, exps, i + 1, left - e * w, out);
        }
        exps[i] = 0;
    }
    rec(&vars, &mut exps, 0, m, &mut out);
    out.sort();
    out
}

/// The generic ansatz: `x^a·M` with `|a| ≤ m0` and `M` of weight `m` in the
/// differentials of order at most `n − 1`.
pub fn ansatz_monomials(n: u32, m0: u32, m: u32) -> Vec<Monomial> {
    let all: Vec<u32> = (1..=n).collect();
    let diffs = weighted_monomials(&all, n.saturating_sub(1).max(1), m);
    let mut out = Vec::new();
    for a in x_monomials(n, m0) {
        for d in &diffs {
            out.push(a.mul(d));
        }
    }
    out
}

/// Assembles the system for `f` (affine, in `x_1..x_n`), `m0` and `m`.
pub fn assemble_system(f: &DiffPoly, n: u32, m0: u32, m: u32, opts: AssemblyOptions) -> Result<SparseLinearSystem> {
    check_affine(f, n)?;
    let k = n.saturating_sub(1).max(1);
    let table = eliminate_dx1(f, n, k)?;
    assemble_with_table(&table, m0, m, opts)
}

/// Assembly from an existing elimination table of order `n − 1`.
pub fn assemble_with_table(
    table: &EliminationTable,
    m0: u32,
    m: u32,
    opts: AssemblyOptions,
) -> Result<SparseLinearSystem> {
    let n = table.n;
    let f = &table.f;
    let delta = f.total_degree();
    let needed = required_power(&table.kappas(), m);
    let power = if opts.minimal_power { needed } else { default_power(n, m) };
    if power < needed {
        return Err(JetError::InsufficientPower { needed, available: power });
    }
    let degree_bound = m0 + power * delta.saturating_sub(1);
    if degree_bound < delta {
        return Err(JetError::InfeasibleDegree(format!(
            "cofactor degree D - delta = {degree_bound} - {delta} is negative"
        )));
    }
    let shift = &table.f_x1 - &DiffPoly::one();
    let others: Vec<u32> = (2..=n).collect();
    let groups = if others.is_empty() { vec![Monomial::one()] } else { weighted_monomials(&others, n - 1, m) };
    let targets = x_monomials(n, degree_bound);
    let mut row_index: BTreeMap<(Monomial, Monomial), usize> = BTreeMap::new();
    let mut row_labels = Vec::new();
    for g in &groups {
        for x in &targets {
            row_index.insert((g.clone(), x.clone()), row_labels.len());
            row_labels.push(format!("coefficient of {x} in the {g} group"));
        }
    }
    let mut entries: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); row_labels.len()];
    let mut columns = Vec::new();
    for u in ansatz_monomials(n, m0, m) {
        let col = columns.len();
        let image = table.eliminate(&DiffPoly::term(u.clone(), Scalar::one()), power)?;
        for (g, c) in image.collect_by(Var::is_differential) {
            for (x, v) in c.terms() {
                let r = row_index.get(&(g.clone(), x.clone())).ok_or_else(|| {
                    JetError::InfeasibleDegree(format!("term {x} of group {g} exceeds the degree bound"))
                })?;
                entries[*r].push((col, v.clone()));
            }
        }
        columns.push(Column::Q(u));
    }
    let num_q_columns = columns.len();
    for g in &groups {
        for (generator, degree, is_f) in [(f, degree_bound - delta, true), (&shift, degree_bound + 1 - delta, false)] {
            for a in x_monomials(n, degree) {
                let col = columns.len();
                for (x, v) in generator.terms() {
                    let r = row_index[&(g.clone(), a.mul(x))];
                    entries[r].push((col, -v));
                }
                columns.push(if is_f {
                    Column::CofactorF { group: g.clone(), x: a }
                } else {
                    Column::CofactorShift { group: g.clone(), x: a }
                });
            }
        }
    }
    let rows = entries.iter().map(|e| integer_vector(e.iter().map(|(i, c)| (*i, c)))).collect();
    Ok(SparseLinearSystem { n, delta, m0, m, power, degree_bound, columns, num_q_columns, rows, row_labels })
}

/// A basis of the `Q`-coefficient vectors of all solutions, in reduced row
/// echelon form over the `Q` columns; the cofactor unknowns are eliminated
/// first. For a system without cofactor columns this is its nullspace.
pub fn solve_nullspace(system: &SparseLinearSystem) -> Vec<Vec<Scalar>> {
    projected_nullspace(system.rows.iter().cloned(), system.num_q_columns)
}

/// The polynomial `Σ v_u·u` over the `Q` columns.
pub fn q_from_vector(system: &SparseLinearSystem, v: &[Scalar]) -> DiffPoly {
    DiffPoly::from_terms(system.columns.iter().zip(v).filter_map(|(c, x)| match c {
        Column::Q(u) if !x.is_zero() => Some((u.clone(), x.clone())),
        _ => None,
    }))
}

/// Scales a vector so that its entries are coprime integers with a positive
/// first nonzero entry.
pub fn primitive(v: &[Scalar]) -> Vec<Scalar> {
    let ints = integer_vector(v.iter().enumerate());
    let mut out = vec![Scalar::zero(); v.len()];
    for (i, c) in ints {
        out[i] = Scalar::from_integer(c);
    }
    out
}

/// The multi-index counts used to size the system: `(#Q columns, #groups)`.
pub fn ansatz_sizes(n: u32, m0: u32, m: u32) -> (usize, usize) {
    let others: Vec<u32> = (2..=n).collect();
    let groups = if others.is_empty() { 1 } else { weighted_monomials(&others, n - 1, m).len() };
    (ansatz_monomials(n, m0, m).len(), groups)
}

impl SparseLinearSystem {
    /// Whether `v` (over all columns) satisfies every row exactly.
    pub fn satisfies(&self, v: &[Scalar]) -> bool {
        self.rows.iter().all(|row| {
            let s: Scalar = row.iter().map(|(i, c)| &v[*i] * Scalar::from_integer(c.clone())).sum();
            s.is_zero()
        })
    }

}

#[cfg(test)]
mod tests {
    use super::*;
    use core_poly::parse_poly;

    #[test]
    fn weighted_monomial_counts() {
        assert_eq!(weighted_monomials(&[1, 2], 1, 2).len(), 3);
        assert_eq!(weighted_monomials(&[2], 2, 2).len(), 2);
        assert_eq!(weighted_monomials(&[2, 3], 2, 2).len(), 5);
    }

    #[test]
    fn single_row_nullspace() {
        let sys = SparseLinearSystem {
            n: 1,
            delta: 1,
            m0: 0,
            m: 0,
            power: 0,
            degree_bound: 0,
            columns: vec![Column::Q(Monomial::one()), Column::Q(Monomial::var(Var::x(1)))],
            num_q_columns: 2,
            rows: vec![integer_vector([(0, &Scalar::one()), (1, &-Scalar::one())])],
            row_labels: vec!["r".into()],
        };
        assert_eq!(solve_nullspace(&sys), vec![vec![Scalar::one(), Scalar::one()]]);
        assert!(sys.satisfies(&[Scalar::zero(), Scalar::zero()]));
    }

    #[test]
    fn cubic_system_sizes() {
        let f = parse_poly("x1^3 + x2^3 - 1").unwrap();
        let sys = assemble_system(&f, 2, 1, 1, AssemblyOptions::default()).unwrap();
        assert_eq!(sys.power, 2);
        assert_eq!(sys.degree_bound, 5);
        assert_eq!(sys.num_q_columns, 6);
        assert_eq!(sys.columns.len(), 6 + 6 + 10);
        assert_eq!(sys.rows.len(), 21);
    }
}
