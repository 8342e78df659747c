//! Exact sparse linear algebra over the rationals.
//!
//! Rows are stored as primitive integer vectors and combined fraction-free:
//! eliminating a column from a row multiplies by the pivot entry and divides
//! out the row content afterwards. Pivots are chosen by minimal fill: the
//! column with the fewest entries, then the shortest row in it, with ties
//! broken by index so results are deterministic.

use std::collections::{BTreeMap, BTreeSet};

use core_poly::Scalar;
use num::{BigInt, Integer, One, Signed, Zero};

/// A sparse integer vector indexed by column.
pub type SparseVec = BTreeMap<usize, BigInt>;

/// Clears denominators and divides by the content, so the first nonzero
/// entry is positive.
pub fn integer_vector<'a>(entries: impl IntoIterator<Item = (usize, &'a Scalar)>) -> SparseVec {
    let entries: Vec<(usize, &Scalar)> = entries.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    let lcm = entries.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
    let mut out: SparseVec = entries.into_iter().map(|(i, c)| (i, c.numer() * (&lcm / c.denom()))).collect();
    make_primitive(&mut out);
    out
}

fn make_primitive(v: &mut SparseVec) {
    let mut g = BigInt::zero();
    for c in v.values() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    let negative = v.values().next().is_some_and(|c| c.is_negative());
    if g.is_zero() {
        return;
    }
    if negative {
        g = -g;
    }
    if !g.is_one() {
        for c in v.values_mut() {
            *c = &*c / &g;
        }
    }
}

/// `a·row − b·pivot` scaled to clear the column, where `a`, `b` are the
/// entries of `pivot` and `row` at `col`.
fn eliminate(row: &SparseVec, pivot: &SparseVec, col: usize) -> SparseVec {
    let a = &pivot[&col];
    let b = &row[&col];
    let g = a.gcd(b);
    let (ra, rb) = (a / &g, b / &g);
    let mut out: SparseVec = row.iter().map(|(i, c)| (*i, c * &ra)).collect();
    for (i, c) in pivot {
        let entry = out.entry(*i).or_default();
        *entry -= c * &rb;
    }
    out.retain(|_, c| !c.is_zero());
    make_primitive(&mut out);
    out
}

/// Pivot rows in elimination order. Each pivot row has no entry in the
/// pivot columns chosen before it.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Echelon {
    /// `(pivot column, row)` in elimination order.
    pub pivots: Vec<(usize, SparseVec)>,
}

impl Echelon {
    /// Number of pivots.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `v` by the pivot rows; the result is zero exactly when `v`
    /// lies in the row span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        v.retain(|_, c| !c.is_zero());
        for (col, row) in &self.pivots {
            if v.contains_key(col) {
                v = eliminate(&v, row, *col);
            }
        }
        v
    }

    /// Pivot columns.
    pub fn pivot_columns(&self) -> BTreeSet<usize> {
        self.pivots.iter().map(|(c, _)| *c).collect()
    }
}

/// Incremental fraction-free elimination with minimal-fill pivoting.
#[derive(Clone, Debug, Default)]
pub struct Eliminator {
    rows: BTreeMap<usize, SparseVec>,
    col_rows: BTreeMap<usize, BTreeSet<usize>>,
    echelon: Echelon,
}

impl Eliminator {
    /// Starts from the given rows; zero rows are dropped.
    pub fn new(rows: impl IntoIterator<Item = SparseVec>) -> Eliminator {
        let mut out = Eliminator::default();
        for (i, mut row) in rows.into_iter().enumerate() {
            row.retain(|_, c| !c.is_zero());
            if row.is_empty() {
                continue;
            }
            make_primitive(&mut row);
            for col in row.keys() {
                out.col_rows.entry(*col).or_default().insert(i);
            }
            out.rows.insert(i, row);
        }
        out
    }

    fn choose(&self, allowed: &dyn Fn(usize) -> bool) -> Option<(usize, usize)> {
        let (col, rows) = self
            .col_rows
            .iter()
            .filter(|(c, r)| !r.is_empty() && allowed(**c))
            .min_by_key(|(c, r)| (r.len(), **c))?;
        let row = *rows.iter().min_by_key(|i| (self.rows[i].len(), **i))?;
        Some((*col, row))
    }

    /// Pivots on columns accepted by `allowed` until none of them has an
    /// entry in the remaining rows.
    pub fn run(&mut self, allowed: &dyn Fn(usize) -> bool) {
        while let Some((col, r)) = self.choose(allowed) {
            let pivot = self.rows.remove(&r).expect("chosen row is active");
            for c in pivot.keys() {
                if let Some(set) = self.col_rows.get_mut(c) {
                    set.remove(&r);
                }
            }
            let targets: Vec<usize> = self.col_rows.get(&col).map(|s| s.iter().copied().collect()).unwrap_or_default();
            for i in targets {
                let old = self.rows.remove(&i).expect("indexed row is active");
                for c in old.keys() {
                    self.col_rows.get_mut(c).expect("indexed column").remove(&i);
                }
                let new = eliminate(&old, &pivot, col);
                if !new.is_empty() {
                    for c in new.keys() {
                        self.col_rows.entry(*c).or_default().insert(i);
                    }
                    self.rows.insert(i, new);
                }
            }
            self.col_rows.retain(|_, s| !s.is_empty());
            self.echelon.pivots.push((col, pivot));
        }
    }

    /// The pivots found so far and the rows not used as pivots.
    pub fn finish(self) -> (Echelon, Vec<SparseVec>) {
        (self.echelon, self.rows.into_values().collect())
    }
}

/// Row echelon form of the given rows.
pub fn echelonize(rows: impl IntoIterator<Item = SparseVec>) -> Echelon {
    let mut e = Eliminator::new(rows);
    e.run(&|_| true);
    e.finish().0
}

/// Rank of the given rows.
pub fn rank(rows: impl IntoIterator<Item = SparseVec>) -> usize {
    echelonize(rows).rank()
}

/// One solution vector per free column, by back substitution through the
/// pivots in reverse order.
fn back_substitute(echelon: &Echelon, ncols: usize) -> Vec<Vec<Scalar>> {
    let pivot_cols = echelon.pivot_columns();
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut x: BTreeMap<usize, Scalar> = BTreeMap::new();
        x.insert(free, Scalar::one());
        for (col, row) in echelon.pivots.iter().rev() {
            let mut s = Scalar::zero();
            for (j, c) in row {
                if j != col {
                    if let Some(xj) = x.get(j) {
                        s += xj * Scalar::from_integer(c.clone());
                    }
                }
            }
            if !s.is_zero() {
                x.insert(*col, -s / Scalar::from_integer(row[col].clone()));
            }
        }
        let mut dense = vec![Scalar::zero(); ncols];
        for (j, v) in x {
            dense[j] = v;
        }
        out.push(dense);
    }
    out
}

/// Reduced row echelon form of dense rational vectors; zero rows are
/// dropped and every pivot is 1.
pub fn rref(mut rows: Vec<Vec<Scalar>>) -> Vec<Vec<Scalar>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Scalar::one() / &rows[r][col];
        for v in rows[r].iter_mut() {
            *v *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot) {
                    *v -= &factor * pv;
                }
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

/// A basis of `{x : A x = 0}` in reduced row echelon form.
pub fn nullspace(rows: impl IntoIterator<Item = SparseVec>, ncols: usize) -> Vec<Vec<Scalar>> {
    rref(back_substitute(&echelonize(rows), ncols))
}

/// A basis, in reduced row echelon form, of the projection of
/// `{x : A x = 0}` onto its first `keep` coordinates. The remaining columns
/// are eliminated first; the rows left over constrain only the kept
/// coordinates.
pub fn projected_nullspace(rows: impl IntoIterator<Item = SparseVec>, keep: usize) -> Vec<Vec<Scalar>> {
    let mut e = Eliminator::new(rows);
    e.run(&|c| c >= keep);
    let (_, residual) = e.finish();
    nullspace(residual, keep)
}
