//! Sparse monomials over the jet alphabet, and monomial orders.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::var::Var;

/// A product of variable powers, stored as `(variable, exponent)` pairs
/// sorted by the canonical variable ordering with positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    /// The empty product.
    pub fn one() -> Monomial {
        Monomial(Vec::new())
    }

    /// A single variable.
    pub fn var(v: Var) -> Monomial {
        Monomial(vec![(v, 1)])
    }

    /// `v^e` (the empty product when `e = 0`).
    pub fn var_pow(v: Var, e: u32) -> Monomial {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs,
    /// merging repeats and dropping zero exponents.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, u32)>) -> Monomial {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    /// True for the empty product.
    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// The sorted factor list.
    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    /// Exponent of `v` (zero when absent).
    pub fn exponent(&self, v: &Var) -> u32 {
        match self.0.binary_search_by(|(w, _)| w.cmp(v)) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    /// Product of two monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// `self^e`.
    pub fn pow(&self, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(v, a)| (v.clone(), a * e)).collect())
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|(v, e)| other.exponent(v) >= *e)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(other.0.len());
        let mut j = 0;
        for (v, e) in &other.0 {
            let mine = if j < self.0.len() && self.0[j].0 == *v {
                j += 1;
                self.0[j - 1].1
            } else {
                0
            };
            if mine > *e {
                return None;
            }
            if *e > mine {
                out.push((v.clone(), e - mine));
            }
        }
        if j != self.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    /// Removes one power of `v`, returning the former exponent and the
    /// remaining monomial, or `None` when `v` does not occur.
    pub fn lower(&self, v: &Var) -> Option<(u32, Monomial)> {
        let i = self.0.binary_search_by(|(w, _)| w.cmp(v)).ok()?;
        let e = self.0[i].1;
        let mut out = self.0.clone();
        if e == 1 {
            out.remove(i);
        } else {
            out[i].1 -= 1;
        }
        Some((e, Monomial(out)))
    }

    /// Removes every power of `v`, returning the exponent and the remaining monomial.
    pub fn strip(&self, v: &Var) -> (u32, Monomial) {
        match self.0.binary_search_by(|(w, _)| w.cmp(v)) {
            Ok(i) => {
                let mut out = self.0.clone();
                let (_, e) = out.remove(i);
                (e, Monomial(out))
            }
            Err(_) => (0, self.clone()),
        }
    }

    /// True when no variable occurs in both monomials.
    pub fn is_coprime_to(&self, other: &Monomial) -> bool {
        self.0.iter().all(|(v, _)| other.exponent(v) == 0)
    }

    /// Total degree over variables selected by `pred`.
    pub fn degree_where(&self, pred: impl Fn(&Var) -> bool) -> u32 {
        self.0.iter().filter(|(v, _)| pred(v)).map(|(_, e)| e).sum()
    }

    /// Total degree over all variables.
    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    /// Weight `Σ order·exponent`.
    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(v, e)| v.weight() * e).sum()
    }

    /// Total exponent of base coordinates `z_j`, `x_j`.
    pub fn base_degree(&self) -> u32 {
        self.degree_where(Var::is_base)
    }

    /// Splits into the part on variables selected by `pred` and the rest.
    pub fn split(&self, pred: impl Fn(&Var) -> bool) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().cloned().partition(|(v, _)| pred(v));
        (Monomial(a), Monomial(b))
    }

    /// Iterator over the variables that occur.
    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.0.iter().map(|(v, _)| v)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A monomial order used for leading terms and multivariate division.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Lexicographic order in which a variable earlier in the canonical
    /// ordering is more significant.
    Lex,
    /// Total degree, ties broken by [`MonomialOrder::Lex`].
    DegLex,
    /// Weighted degree with the given positive integer weights (missing
    /// variables weigh 1), ties broken by [`MonomialOrder::Lex`].
    Weighted(BTreeMap<Var, u64>),
}

impl MonomialOrder {
    /// Compares two monomials; `Greater` means `a` is larger.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex_cmp(a, b),
            MonomialOrder::DegLex => a.total_degree().cmp(&b.total_degree()).then_with(|| lex_cmp(a, b)),
            MonomialOrder::Weighted(w) => {
                let wt = |m: &Monomial| -> u128 {
                    m.factors()
                        .iter()
                        .map(|(v, e)| *w.get(v).unwrap_or(&1) as u128 * *e as u128)
                        .sum()
                };
                wt(a).cmp(&wt(b)).then_with(|| lex_cmp(a, b))
            }
        }
    }
}

fn lex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    let (fa, fb) = (a.factors(), b.factors());
    let (mut i, mut j) = (0, 0);
    loop {
        match (fa.get(i), fb.get(j)) {
            (None, None) => return Ordering::Equal,
            (Some(_), None) => return Ordering::Greater,
            (None, Some(_)) => return Ordering::Less,
            (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {
                    if ea != eb {
                        return ea.cmp(eb);
                    }
                    i += 1;
                    j += 1;
                }
            },
        }
    }
}
