//! Rational functions with a factored denominator.

use std::collections::BTreeMap;
use std::fmt;

use core_poly::{DiffPoly, Monomial, Scalar, Var};
use num::{One, Zero};

use crate::error::{Result, SlantedError};

/// A quotient `numerator / Π factor^exponent`.
///
/// Denominator factors are monic nonconstant polynomials; constants are
/// absorbed into the numerator. Sums use the least common multiple of the
/// factor lists, so denominators stay products of the factors that actually
/// occur in a construction.
#[derive(Clone, Debug, Default)]
pub struct RationalCoeff {
    numerator: DiffPoly,
    denominator: BTreeMap<DiffPoly, u32>,
}

impl RationalCoeff {
    /// The zero function.
    pub fn zero() -> RationalCoeff {
        RationalCoeff::default()
    }

    /// The constant one.
    pub fn one() -> RationalCoeff {
        RationalCoeff::from_poly(DiffPoly::one())
    }

    /// A polynomial viewed as a rational function.
    pub fn from_poly(p: DiffPoly) -> RationalCoeff {
        RationalCoeff { numerator: p, denominator: BTreeMap::new() }
    }

    /// `numerator / denominator` for polynomials.
    pub fn quotient(numerator: DiffPoly, denominator: &DiffPoly) -> Result<RationalCoeff> {
        Ok(&RationalCoeff::from_poly(numerator) * &RationalCoeff::from_poly(denominator.clone()).inverse()?)
    }

    /// The numerator.
    pub fn numerator(&self) -> &DiffPoly {
        &self.numerator
    }

    /// Monic denominator factors with their exponents.
    pub fn denominator_factors(&self) -> &BTreeMap<DiffPoly, u32> {
        &self.denominator
    }

    /// The expanded denominator.
    pub fn denominator(&self) -> DiffPoly {
        self.denominator.iter().fold(DiffPoly::one(), |acc, (f, e)| &acc * &f.pow(*e))
    }

    /// True for the zero function.
    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// The polynomial, when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&DiffPoly> {
        self.denominator.is_empty().then_some(&self.numerator)
    }

    /// Multiplies by a scalar.
    pub fn scale(&self, c: &Scalar) -> RationalCoeff {
        if c.is_zero() {
            return RationalCoeff::zero();
        }
        RationalCoeff { numerator: self.numerator.scale(c), denominator: self.denominator.clone() }
    }

    /// Multiplies by a polynomial.
    pub fn mul_poly(&self, p: &DiffPoly) -> RationalCoeff {
        let mut out = RationalCoeff { numerator: &self.numerator * p, denominator: self.denominator.clone() };
        out.cancel();
        out
    }

    /// The reciprocal, or an error for the zero function.
    pub fn inverse(&self) -> Result<RationalCoeff> {
        if self.numerator.is_zero() {
            return Err(SlantedError::DivisionByZero);
        }
        let mut numerator = self.denominator();
        let mut denominator = BTreeMap::new();
        for (factor, e) in split_factors(&self.numerator, &mut numerator) {
            *denominator.entry(factor).or_insert(0) += e;
        }
        let mut out = RationalCoeff { numerator, denominator };
        out.cancel();
        Ok(out)
    }

    /// Divides numerator by denominator factors wherever the division is
    /// exact.
    pub fn cancel(&mut self) {
        if self.numerator.is_zero() {
            self.denominator.clear();
            return;
        }
        let factors: Vec<DiffPoly> = self.denominator.keys().cloned().collect();
        for factor in factors {
            let mut e = self.denominator[&factor];
            while e > 0 {
                match self.numerator.div_exact(&factor) {
                    Some(q) => {
                        self.numerator = q;
                        e -= 1;
                    }
                    None => break,
                }
            }
            if e == 0 {
                self.denominator.remove(&factor);
            } else {
                self.denominator.insert(factor, e);
            }
        }
    }

    /// Rewrites both operands over the least common multiple of their
    /// denominators.
    fn common(&self, other: &RationalCoeff) -> (DiffPoly, DiffPoly, BTreeMap<DiffPoly, u32>) {
        let mut lcm = self.denominator.clone();
        for (f, e) in &other.denominator {
            let entry = lcm.entry(f.clone()).or_insert(0);
            *entry = (*entry).max(*e);
        }
        let lift = |r: &RationalCoeff| {
            lcm.iter().fold(r.numerator.clone(), |acc, (f, e)| {
                let have = r.denominator.get(f).copied().unwrap_or(0);
                if *e > have {
                    &acc * &f.pow(e - have)
                } else {
                    acc
                }
            })
        };
        (lift(self), lift(other), lcm)
    }

    /// Applies a substitution to numerator and denominator.
    pub fn substitute_with(&self, rule: &dyn Fn(&Var) -> Option<DiffPoly>) -> Result<RationalCoeff> {
        let num = RationalCoeff::from_poly(self.numerator.substitute_with(rule));
        let den = self.denominator.iter().fold(DiffPoly::one(), |acc, (f, e)| &acc * &f.substitute_with(rule).pow(*e));
        if den.is_zero() {
            return Err(SlantedError::DivisionByZero);
        }
        Ok(&num * &RationalCoeff::from_poly(den).inverse()?)
    }

    /// Writes the function as `numerator / d` for a given multiple `d` of its
    /// denominator, returning the new numerator.
    pub fn numerator_over(&self, d: &BTreeMap<DiffPoly, u32>) -> Option<DiffPoly> {
        let mut out = self.numerator.clone();
        for (f, e) in d {
            let have = self.denominator.get(f).copied().unwrap_or(0);
            if have > *e {
                return None;
            }
            out = &out * &f.pow(e - have);
        }
        self.denominator.keys().all(|f| d.contains_key(f)).then_some(out)
    }
}

/// Splits `p = c · x^a · rest` into monic factors: each variable of the
/// monomial content separately, then the monic primitive remainder. The
/// constant `1/c` multiplies `absorb`.
fn split_factors(p: &DiffPoly, absorb: &mut DiffPoly) -> Vec<(DiffPoly, u32)> {
    let mut content: Option<Monomial> = None;
    for (m, _) in p.terms() {
        content = Some(match content {
            None => m.clone(),
            Some(c) => Monomial::from_pairs(
                c.factors().iter().filter_map(|(v, e)| Some((v.clone(), (*e).min(m.exponent(v))))).filter(|(_, e)| *e > 0),
            ),
        });
    }
    let content = content.unwrap_or_else(Monomial::one);
    let rest = DiffPoly::from_terms(p.terms().map(|(m, c)| (content.quotient_of(m).expect("content divides"), c.clone())));
    let (monic, lc) = rest.monic();
    *absorb = absorb.scale(&(Scalar::one() / lc));
    let mut out: Vec<(DiffPoly, u32)> =
        content.factors().iter().map(|(v, e)| (DiffPoly::var(v.clone()), *e)).collect();
    if monic.as_constant().is_none() {
        out.push((monic, 1));
    }
    out
}

impl PartialEq for RationalCoeff {
    fn eq(&self, other: &RationalCoeff) -> bool {
        let (a, b, _) = self.common(other);
        a == b
    }
}

impl Eq for RationalCoeff {}

impl From<DiffPoly> for RationalCoeff {
    fn from(p: DiffPoly) -> RationalCoeff {
        RationalCoeff::from_poly(p)
    }
}

impl std::ops::Add for &RationalCoeff {
    type Output = RationalCoeff;
    fn add(self, other: &RationalCoeff) -> RationalCoeff {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let (a, b, lcm) = self.common(other);
        let mut out = RationalCoeff { numerator: &a + &b, denominator: lcm };
        out.cancel();
        out
    }
}

impl std::ops::Neg for &RationalCoeff {
    type Output = RationalCoeff;
    fn neg(self) -> RationalCoeff {
        RationalCoeff { numerator: -&self.numerator, denominator: self.denominator.clone() }
    }
}

impl std::ops::Sub for &RationalCoeff {
    type Output = RationalCoeff;
    fn sub(self, other: &RationalCoeff) -> RationalCoeff {
        self + &(-other)
    }
}

impl std::ops::Mul for &RationalCoeff {
    type Output = RationalCoeff;
    fn mul(self, other: &RationalCoeff) -> RationalCoeff {
        if self.is_zero() || other.is_zero() {
            return RationalCoeff::zero();
        }
        let mut denominator = self.denominator.clone();
        for (f, e) in &other.denominator {
            *denominator.entry(f.clone()).or_insert(0) += e;
        }
        let mut out = RationalCoeff { numerator: &self.numerator * &other.numerator, denominator };
        out.cancel();
        out
    }
}

impl fmt::Display for RationalCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            return write!(f, "{}", self.numerator);
        }
        write!(f, "({})/(", self.numerator)?;
        for (i, (factor, e)) in self.denominator.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "({factor})")?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        write!(f, ")")
    }
}
