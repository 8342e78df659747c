//! Sparse differential polynomials with exact rational coefficients.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::{One, Zero};

use crate::error::{PolyError, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::scalar::{int, Scalar};
use crate::var::Var;

/// A sparse polynomial over the jet alphabet with exact rational
/// coefficients.
///
/// No stored coefficient is zero and monomials are canonical, so two
/// polynomials are equal exactly when their term maps are identical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct DiffPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl DiffPoly {
    /// The zero polynomial.
    pub fn zero() -> DiffPoly {
        DiffPoly::default()
    }

    /// The constant one.
    pub fn one() -> DiffPoly {
        DiffPoly::constant(Scalar::one())
    }

    /// A constant polynomial.
    pub fn constant(c: Scalar) -> DiffPoly {
        DiffPoly::term(Monomial::one(), c)
    }

    /// A constant integer polynomial.
    pub fn int(c: i64) -> DiffPoly {
        DiffPoly::constant(int(c))
    }

    /// A single variable.
    pub fn var(v: Var) -> DiffPoly {
        DiffPoly::term(Monomial::var(v), Scalar::one())
    }

    /// The single term `c·m`.
    pub fn term(m: Monomial, c: Scalar) -> DiffPoly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        DiffPoly { terms }
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms(pairs: impl IntoIterator<Item = (Monomial, Scalar)>) -> DiffPoly {
        let mut p = DiffPoly::zero();
        for (m, c) in pairs {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c·m` in place.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The constant value when the polynomial is constant (including zero).
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Number of stored terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterator over terms in canonical monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// Consumes the polynomial, yielding its terms.
    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Scalar)> {
        self.terms.into_iter()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// All variables that occur.
    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars().cloned()).collect()
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Scalar) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// Multiplies every monomial by `m` and every coefficient by `c`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> DiffPoly {
        if c.is_zero() {
            return DiffPoly::zero();
        }
        DiffPoly { terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect() }
    }

    /// `self^e`.
    pub fn pow(&self, e: u32) -> DiffPoly {
        let mut result = DiffPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Partial derivative with respect to `v`.
    pub fn partial(&self, v: &Var) -> DiffPoly {
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            if let Some((e, rest)) = m.lower(v) {
                out.add_term(rest, c * int(e as i64));
            }
        }
        out
    }

    /// Applies the derivation determined by its values on variables:
    /// `D(v) = rule(v)`, extended by linearity and the Leibniz rule.
    pub fn derive_with(&self, rule: &dyn Fn(&Var) -> DiffPoly) -> DiffPoly {
        let mut images: HashMap<Var, DiffPoly> = HashMap::new();
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            for (v, _) in m.factors() {
                let image = images.entry(v.clone()).or_insert_with(|| rule(v));
                if image.is_zero() {
                    continue;
                }
                let (e, rest) = m.lower(v).expect("variable occurs");
                let coeff = c * int(e as i64);
                for (im, ic) in &image.terms {
                    out.add_term(rest.mul(im), &coeff * ic);
                }
            }
        }
        out
    }

    /// Total derivative `d`: raises the order of every coordinate-type
    /// variable by one and treats `α_ν`, `ν_j` as constants.
    pub fn total_derivative(&self) -> DiffPoly {
        self.derive_with(&|v: &Var| match v.successor() {
            Some(s) => DiffPoly::var(s),
            None => DiffPoly::zero(),
        })
    }

    /// Applies the total derivative `k` times.
    pub fn total_derivative_n(&self, k: u32) -> DiffPoly {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.total_derivative();
        }
        p
    }

    /// Substitutes polynomials for variables: `rule(v) = Some(q)` replaces
    /// `v` by `q`, `None` keeps `v`.
    pub fn substitute_with(&self, rule: &dyn Fn(&Var) -> Option<DiffPoly>) -> DiffPoly {
        let mut images: HashMap<Var, Option<DiffPoly>> = HashMap::new();
        let mut powers: HashMap<(Var, u32), DiffPoly> = HashMap::new();
        let mut out = DiffPoly::zero();
        for (m, c) in &self.terms {
            let mut kept: Vec<(Var, u32)> = Vec::new();
            let mut acc = DiffPoly::constant(c.clone());
            for (v, e) in m.factors() {
                let image = images.entry(v.clone()).or_insert_with(|| rule(v));
                match image {
                    None => kept.push((v.clone(), *e)),
                    Some(q) => {
                        let key = (v.clone(), *e);
                        if !powers.contains_key(&key) {
                            let pw = q.pow(*e);
                            powers.insert(key.clone(), pw);
                        }
                        acc = &acc * &powers[&key];
                        if acc.is_zero() {
                            break;
                        }
                    }
                }
            }
            if acc.is_zero() {
                continue;
            }
            let kept = Monomial::from_pairs(kept);
            for (im, ic) in acc.terms {
                out.add_term(im.mul(&kept), ic);
            }
        }
        out
    }

    /// Substitutes `q` for the single variable `v`.
    pub fn substitute(&self, v: &Var, q: &DiffPoly) -> DiffPoly {
        self.substitute_with(&|w: &Var| (w == v).then(|| q.clone()))
    }

    /// Evaluates at scalar values; every occurring variable must be assigned.
    pub fn evaluate(&self, value: &dyn Fn(&Var) -> Option<Scalar>) -> Result<Scalar> {
        let mut cache: HashMap<Var, Scalar> = HashMap::new();
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m.factors() {
                let x = match cache.get(v) {
                    Some(x) => x.clone(),
                    None => {
                        let x = value(v).ok_or_else(|| PolyError::MissingCoordinate(v.to_string()))?;
                        cache.insert(v.clone(), x.clone());
                        x
                    }
                };
                t *= num::pow(x, *e as usize);
            }
            total += t;
        }
        Ok(total)
    }

    /// Groups terms by the part of each monomial on variables selected by
    /// `pred`: returns `key ↦ coefficient polynomial` with
    /// `self = Σ key·coefficient`.
    pub fn collect_by(&self, pred: impl Fn(&Var) -> bool) -> BTreeMap<Monomial, DiffPoly> {
        let mut out: BTreeMap<Monomial, DiffPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (key, rest) = m.split(&pred);
            out.entry(key).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// Keeps only the terms selected by `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial, &Scalar) -> bool) -> DiffPoly {
        DiffPoly { terms: self.terms.iter().filter(|(m, c)| keep(m, c)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Maximum weight over terms (zero for the zero polynomial).
    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(Monomial::weight).max().unwrap_or(0)
    }

    /// Maximum total degree over variables selected by `pred`.
    pub fn max_degree_where(&self, pred: impl Fn(&Var) -> bool) -> u32 {
        self.terms.keys().map(|m| m.degree_where(&pred)).max().unwrap_or(0)
    }

    /// Maximum exponent of a single variable.
    pub fn degree_in(&self, v: &Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Maximum total degree.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// Maximum differential order of any variable.
    pub fn max_order(&self) -> u32 {
        self.terms.keys().flat_map(|m| m.vars().map(Var::order)).max().unwrap_or(0)
    }

    /// Leading term under a monomial order.
    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    /// The polynomial divided by its lexicographic leading coefficient,
    /// together with that coefficient.
    pub fn monic(&self) -> (DiffPoly, Scalar) {
        match self.leading_term(&MonomialOrder::Lex) {
            None => (DiffPoly::zero(), Scalar::zero()),
            Some((_, c)) => {
                let c = c.clone();
                (self.scale(&(Scalar::one() / &c)), c)
            }
        }
    }

    /// Multivariate division by a list of divisors under `order`:
    /// returns quotients `q_i` and remainder `r` with
    /// `self = Σ q_i·g_i + r` and no term of `r` divisible by any leading
    /// monomial.
    pub fn div_rem(&self, divisors: &[DiffPoly], order: &MonomialOrder) -> Result<(Vec<DiffPoly>, DiffPoly)> {
        let leads: Vec<(Monomial, Scalar)> = divisors
            .iter()
            .map(|g| g.leading_term(order).map(|(m, c)| (m.clone(), c.clone())).ok_or(PolyError::DivisionByZero))
            .collect::<Result<_>>()?;
        let mut quotients = vec![DiffPoly::zero(); divisors.len()];
        let mut remainder = DiffPoly::zero();
        let mut p = self.clone();
        while let Some((lm, lc)) = p.leading_term(order).map(|(m, c)| (m.clone(), c.clone())) {
            let mut divided = false;
            for (i, (gm, gc)) in leads.iter().enumerate() {
                if let Some(qm) = gm.quotient_of(&lm) {
                    let qc = &lc / gc;
                    p -= divisors[i].mul_term(&qm, &qc);
                    quotients[i].add_term(qm, qc);
                    divided = true;
                    break;
                }
            }
            if !divided {
                p.terms.remove(&lm);
                remainder.add_term(lm, lc);
            }
        }
        Ok((quotients, remainder))
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &DiffPoly) -> Option<DiffPoly> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&(Scalar::one() / c)));
        }
        let (mut q, r) = self.div_rem(std::slice::from_ref(d), &MonomialOrder::Lex).ok()?;
        r.is_zero().then(|| q.remove(0))
    }
}

impl From<Var> for DiffPoly {
    fn from(v: Var) -> DiffPoly {
        DiffPoly::var(v)
    }
}

impl From<Scalar> for DiffPoly {
    fn from(c: Scalar) -> DiffPoly {
        DiffPoly::constant(c)
    }
}

impl AddAssign<&DiffPoly> for DiffPoly {
    fn add_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign<DiffPoly> for DiffPoly {
    fn add_assign(&mut self, rhs: DiffPoly) {
        if self.terms.len() < rhs.terms.len() {
            let lhs = std::mem::replace(self, rhs);
            for (m, c) in lhs.terms {
                self.add_term(m, c);
            }
        } else {
            for (m, c) in rhs.terms {
                self.add_term(m, c);
            }
        }
    }
}

impl SubAssign<&DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, rhs: &DiffPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl SubAssign<DiffPoly> for DiffPoly {
    fn sub_assign(&mut self, rhs: DiffPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl Add<&DiffPoly> for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add<DiffPoly> for DiffPoly {
    type Output = DiffPoly;
    fn add(mut self, rhs: DiffPoly) -> DiffPoly {
        self += rhs;
        self
    }
}

impl Sub<&DiffPoly> for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub<DiffPoly> for DiffPoly {
    type Output = DiffPoly;
    fn sub(mut self, rhs: DiffPoly) -> DiffPoly {
        self -= rhs;
        self
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}

impl Mul<&DiffPoly> for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        if self.is_zero() || rhs.is_zero() {
            return DiffPoly::zero();
        }
        let (small, large) = if self.terms.len() <= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(small.terms.len() * large.terms.len());
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.entry(m) {
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::hash_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                }
            }
        }
        DiffPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Mul<DiffPoly> for DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: DiffPoly) -> DiffPoly {
        &self * &rhs
    }
}

impl Mul<&Scalar> for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &Scalar) -> DiffPoly {
        self.scale(rhs)
    }
}

/// Sum of an iterator of polynomials.
impl std::iter::Sum for DiffPoly {
    fn sum<I: Iterator<Item = DiffPoly>>(iter: I) -> DiffPoly {
        let mut acc = DiffPoly::zero();
        for p in iter {
            acc += p;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(j: u32) -> DiffPoly {
        DiffPoly::var(Var::x(j))
    }

    #[test]
    fn total_derivative_examples() {
        assert_eq!(x(1).total_derivative(), DiffPoly::var(Var::dx(1, 1)));
        let prod = &x(1) * &x(2);
        let expected = &(&x(2) * &DiffPoly::var(Var::dx(1, 1))) + &(&x(1) * &DiffPoly::var(Var::dx(1, 2)));
        assert_eq!(prod.total_derivative(), expected);
        let cube = x(1).pow(3);
        let expected = (&x(1).pow(2) * &DiffPoly::var(Var::dx(1, 1))).scale(&int(3));
        assert_eq!(cube.total_derivative(), expected);
    }

    #[test]
    fn alpha_and_nu_are_constants_for_d() {
        let a = DiffPoly::var(Var::alpha(crate::MultiIndex::new([1, 0])));
        assert!(a.total_derivative().is_zero());
        assert!(DiffPoly::var(Var::nu(0)).total_derivative().is_zero());
    }

    #[test]
    fn exact_division() {
        let a = &x(1) + &x(2);
        let b = &x(1) - &DiffPoly::int(3);
        let p = &a * &b;
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!((&p + &DiffPoly::one()).div_exact(&a), None);
    }

    #[test]
    fn substitution_and_evaluation() {
        let p = &x(1).pow(2) + &x(2);
        let q = p.substitute(&Var::x(1), &(&x(2) + &DiffPoly::one()));
        let value = q.evaluate(&|v| (v == &Var::x(2)).then(|| int(2))).unwrap();
        assert_eq!(value, int(11));
    }

    #[test]
    fn collect_by_differentials() {
        let p = &(&x(1) * &DiffPoly::var(Var::dx(1, 2))) + &DiffPoly::var(Var::dx(1, 2));
        let groups = p.collect_by(Var::is_differential);
        assert_eq!(groups.len(), 1);
        assert_eq!(groups[&Monomial::var(Var::dx(1, 2))], &x(1) + &DiffPoly::one());
    }
}
