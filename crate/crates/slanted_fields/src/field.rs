//! Vector fields with rational coefficients on the `(α, z, ξ)` space.

use std::collections::BTreeMap;
use std::fmt;

use core_poly::{DiffPoly, MultiIndex, Var};

use crate::error::{Result, SlantedError};
use crate::rational::RationalCoeff;

/// A vector field `Σ_v c_v ∂/∂v` with rational coefficients.
///
/// Directions are keyed by the coordinate they differentiate: `α_ν`, `z_j`,
/// `ξ^(ℓ)_j`, or the inhomogeneous `x_j`. Zero coefficients are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ParamVectorField {
    components: BTreeMap<Var, RationalCoeff>,
}

/// The denominator-free form `D·V` of a field `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClearedField {
    /// The common denominator `D` as monic factors with exponents.
    pub denominator: BTreeMap<DiffPoly, u32>,
    /// Polynomial coefficients of `D·V`.
    pub components: BTreeMap<Var, DiffPoly>,
}

fn check_direction(v: &Var) -> Result<()> {
    match v {
        Var::Alpha(_) | Var::Z { order: 0, .. } | Var::X { order: 0, .. } | Var::Xi { .. } => Ok(()),
        other => Err(SlantedError::AlphabetMismatch(format!("no direction d/d{other}"))),
    }
}

impl ParamVectorField {
    /// The zero field.
    pub fn zero() -> ParamVectorField {
        ParamVectorField::default()
    }

    /// The single term `c·∂/∂v`.
    pub fn single(v: Var, c: RationalCoeff) -> Result<ParamVectorField> {
        let mut out = ParamVectorField::zero();
        out.add_component(v, c)?;
        Ok(out)
    }

    /// `∂/∂α_ν`.
    pub fn d_alpha(nu: MultiIndex) -> ParamVectorField {
        ParamVectorField::single(Var::alpha(nu), RationalCoeff::one()).expect("α direction")
    }

    /// Adds `c·∂/∂v` to the field.
    pub fn add_component(&mut self, v: Var, c: RationalCoeff) -> Result<()> {
        check_direction(&v)?;
        let sum = match self.components.remove(&v) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.components.insert(v, sum);
        }
        Ok(())
    }

    /// The coefficient of `∂/∂v` (zero when absent).
    pub fn component(&self, v: &Var) -> RationalCoeff {
        self.components.get(v).cloned().unwrap_or_default()
    }

    /// All nonzero components.
    pub fn components(&self) -> impl Iterator<Item = (&Var, &RationalCoeff)> {
        self.components.iter()
    }

    /// Components in the `∂/∂α_ν` directions.
    pub fn alpha_part(&self) -> impl Iterator<Item = (&MultiIndex, &RationalCoeff)> {
        self.components.iter().filter_map(|(v, c)| match v {
            Var::Alpha(nu) => Some((nu, c)),
            _ => None,
        })
    }

    /// Components in the `∂/∂z_j` directions.
    pub fn z_part(&self) -> impl Iterator<Item = (u32, &RationalCoeff)> {
        self.components.iter().filter_map(|(v, c)| match v {
            Var::Z { order: 0, index } => Some((*index, c)),
            _ => None,
        })
    }

    /// Components in the `∂/∂ξ^(ℓ)_j` directions, keyed by `(ℓ, j)`.
    pub fn xi_part(&self) -> impl Iterator<Item = ((u32, u32), &RationalCoeff)> {
        self.components.iter().filter_map(|(v, c)| match v {
            Var::Xi { order, index } => Some(((*order, *index), c)),
            _ => None,
        })
    }

    /// Number of nonzero components.
    pub fn len(&self) -> usize {
        self.components.len()
    }

    /// True for the zero field.
    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Field sum.
    pub fn add(&self, other: &ParamVectorField) -> ParamVectorField {
        let mut out = self.clone();
        for (v, c) in &other.components {
            out.add_component(v.clone(), c.clone()).expect("directions already checked");
        }
        out
    }

    /// Field difference.
    pub fn sub(&self, other: &ParamVectorField) -> ParamVectorField {
        let negated = other.components.iter().map(|(v, c)| (v.clone(), -c)).collect();
        self.add(&ParamVectorField { components: negated })
    }

    /// Multiplies every coefficient by a function.
    pub fn scale(&self, c: &RationalCoeff) -> ParamVectorField {
        let components = self
            .components
            .iter()
            .map(|(v, a)| (v.clone(), a * c))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        ParamVectorField { components }
    }

    /// The derivative `V(P) = Σ_v c_v ∂P/∂v` of a polynomial.
    pub fn apply(&self, p: &DiffPoly) -> RationalCoeff {
        let mut out = RationalCoeff::zero();
        for (v, c) in &self.components {
            let dp = p.partial(v);
            if !dp.is_zero() {
                out = &out + &c.mul_poly(&dp);
            }
        }
        out
    }

    /// Multiplies by the least common denominator of all coefficients.
    pub fn clear_denominators(&self) -> ClearedField {
        let mut denominator: BTreeMap<DiffPoly, u32> = BTreeMap::new();
        for c in self.components.values() {
            for (f, e) in c.denominator_factors() {
                let entry = denominator.entry(f.clone()).or_insert(0);
                *entry = (*entry).max(*e);
            }
        }
        let components = self
            .components
            .iter()
            .map(|(v, c)| (v.clone(), c.numerator_over(&denominator).expect("lcm is a multiple")))
            .collect();
        ClearedField { denominator, components }
    }

    /// `V(P)` computed through the cleared form: returns `D·V(P)` as a
    /// polynomial.
    pub fn apply_cleared(&self, p: &DiffPoly) -> DiffPoly {
        let cleared = self.clear_denominators();
        cleared.components.iter().map(|(v, c)| c * &p.partial(v)).sum()
    }

    /// Substitutes into every coefficient.
    pub fn substitute_with(&self, rule: &dyn Fn(&Var) -> Option<DiffPoly>) -> Result<ParamVectorField> {
        let mut out = ParamVectorField::zero();
        for (v, c) in &self.components {
            out.add_component(v.clone(), c.substitute_with(rule)?)?;
        }
        Ok(out)
    }
}

impl ClearedField {
    /// The expanded common denominator.
    pub fn denominator_poly(&self) -> DiffPoly {
        self.denominator.iter().fold(DiffPoly::one(), |acc, (f, e)| &acc * &f.pow(*e))
    }
}

fn direction_marker(v: &Var) -> String {
    match v {
        Var::Alpha(nu) => format!("d/dalpha{nu}"),
        Var::Z { index, .. } => format!("d/dz[{index}]"),
        Var::X { index, .. } => format!("d/dx[{index}]"),
        Var::Xi { order, index } => format!("d/dxi[{order},{index}]"),
        other => format!("d/d{other}"),
    }
}

impl fmt::Display for ParamVectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.components.is_empty() {
            return write!(f, "0");
        }
        for (i, (v, c)) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*{}", direction_marker(v))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core_poly::parse_poly;

    #[test]
    fn apply_and_display() {
        let mut v = ParamVectorField::zero();
        v.add_component(Var::z(1), RationalCoeff::from_poly(parse_poly("z1").unwrap())).unwrap();
        v.add_component(Var::alpha(MultiIndex::new([1, 1])), RationalCoeff::from_poly(parse_poly("-a[1,1]").unwrap()))
            .unwrap();
        let p = parse_poly("a[1,1]*z0*z1").unwrap();
        assert!(v.apply(&p).is_zero());
        assert_eq!(v.to_string(), "(z1)*d/dz[1] + (-a[1,1])*d/dalpha[1,1]");
        assert_eq!(v.z_part().count(), 1);
        assert_eq!(v.alpha_part().count(), 1);
    }

    #[test]
    fn rejects_unknown_directions() {
        assert!(ParamVectorField::single(Var::dx(1, 1), RationalCoeff::one()).is_err());
    }

    #[test]
    fn cleared_form_matches_rational_application() {
        let c = RationalCoeff::quotient(parse_poly("1").unwrap(), &parse_poly("z1*(xi1_1 - xi1_2)").unwrap()).unwrap();
        let v = ParamVectorField::single(Var::alpha(MultiIndex::new([0, 2])), c).unwrap();
        let p = parse_poly("a[0,2]*z1^2").unwrap();
        let cleared = v.clear_denominators();
        let lhs = v.apply(&p).mul_poly(&cleared.denominator_poly());
        assert_eq!(lhs.as_poly(), Some(&v.apply_cleared(&p)));
    }
}
