//! Power-series germs on `X = {f = 0}` and evaluation of jet polynomials
//! along them.
//!
//! A random jet of `X` is built by fixing rational curves `x_r(t)` for
//! `r ≥ 2` and solving `f = 0` for `x_1(t)`. The constant term `θ` of
//! `x_1` is a root of `g(θ) = f(θ, x_2(0), …, x_n(0))`, so the series lives
//! over `ℚ[θ]/(g)`. When `g` is squarefree this algebra is a product of
//! fields, `g'(θ) = f_{x1}` is invertible in it, and a nonzero value means
//! a nonzero value at some root.

use core_poly::{DiffPoly, Scalar, UniPoly, Var};
use num::{One, Zero};
use rand::Rng;

use crate::error::{JetError, Result};

/// Arithmetic in `ℚ[θ]/(g)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Residue {
    modulus: UniPoly,
}

impl Residue {
    /// The algebra for a modulus of positive degree.
    pub fn new(modulus: UniPoly) -> Residue {
        Residue { modulus }
    }

    /// Reduction modulo `g`.
    pub fn reduce(&self, a: &UniPoly) -> UniPoly {
        a.rem(&self.modulus)
    }

    /// Product.
    pub fn mul(&self, a: &UniPoly, b: &UniPoly) -> UniPoly {
        self.reduce(&a.mul(b))
    }

    /// Inverse, when `a` is a unit.
    pub fn inverse(&self, a: &UniPoly) -> Option<UniPoly> {
        let (g, s, _) = a.ext_gcd(&self.modulus);
        if g.degree() != Some(0) {
            return None;
        }
        Some(self.reduce(&s.scale(&(Scalar::one() / g.coeff(0)))))
    }

    /// `a^e`.
    pub fn pow(&self, a: &UniPoly, e: u32) -> UniPoly {
        (0..e).fold(UniPoly::constant(Scalar::one()), |acc, _| self.mul(&acc, a))
    }
}

/// A truncated power series in `t` with coefficients in `ℚ[θ]/(g)`.
type Series = Vec<UniPoly>;

fn series_mul(r: &Residue, a: &Series, b: &Series) -> Series {
    let len = a.len();
    let mut out = vec![UniPoly::zero(); len];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(len - i) {
            if !bj.is_zero() {
                out[i + j] = out[i + j].add(&r.mul(ai, bj));
            }
        }
    }
    out
}

/// Evaluates a polynomial in `x_1..x_n` on series arguments.
fn eval_series(r: &Residue, p: &DiffPoly, args: &[Series]) -> Series {
    let len = args[0].len();
    let mut out = vec![UniPoly::zero(); len];
    for (m, c) in p.terms() {
        let mut term = vec![UniPoly::zero(); len];
        term[0] = UniPoly::constant(c.clone());
        for (v, e) in m.factors() {
            let j = v.index().expect("coordinate") as usize;
            for _ in 0..*e {
                term = series_mul(r, &term, &args[j - 1]);
            }
        }
        for (o, t) in out.iter_mut().zip(term) {
            *o = o.add(&t);
        }
    }
    out
}

/// A jet of `X` at `t = 0`: the values `d^ℓ x_j` for `ℓ ≤ order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetSample {
    /// The algebra the values live in.
    pub residue: Residue,
    /// `values[ℓ][j−1] = d^ℓ x_j (0)`.
    pub values: Vec<Vec<UniPoly>>,
    /// The rational base values `x_2(0), …, x_n(0)`.
    pub base: Vec<Scalar>,
}

fn random_rational(rng: &mut impl Rng) -> Scalar {
    Scalar::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=4).into())
}

/// Samples a jet of order `order` on `X = {f = 0} ⊂ ℂ^n`. Returns `None`
/// when the sampled fibre polynomial is constant or not squarefree.
pub fn sample_jet(f: &DiffPoly, n: u32, order: u32, rng: &mut impl Rng) -> Option<JetSample> {
    let len = order as usize + 1;
    let base: Vec<Scalar> = (2..=n).map(|_| random_rational(rng)).collect();
    let fibre = f.substitute_with(&|v: &Var| match v {
        Var::X { order: 0, index } if *index >= 2 => Some(DiffPoly::constant(base[*index as usize - 2].clone())),
        _ => None,
    });
    let mut coeffs = vec![Scalar::zero(); fibre.degree_in(&Var::x(1)) as usize + 1];
    for (m, c) in fibre.terms() {
        coeffs[m.exponent(&Var::x(1)) as usize] += c;
    }
    let g = UniPoly::new(coeffs);
    if g.degree().unwrap_or(0) < 1 || !g.is_squarefree() {
        return None;
    }
    let residue = Residue::new(g.clone());
    let inv = residue.inverse(&residue.reduce(&g.derivative()))?;
    let mut args: Vec<Series> = Vec::new();
    let mut x1 = vec![UniPoly::zero(); len];
    x1[0] = UniPoly::t();
    args.push(x1);
    for b in &base {
        let mut s = vec![UniPoly::zero(); len];
        s[0] = UniPoly::constant(b.clone());
        for c in s.iter_mut().skip(1) {
            *c = UniPoly::constant(random_rational(rng));
        }
        args.push(s);
    }
    for _ in 0..len {
        let value = eval_series(&residue, f, &args);
        for (a, v) in args[0].iter_mut().zip(value) {
            *a = a.sub(&residue.mul(&v, &inv));
        }
    }
    if eval_series(&residue, f, &args).iter().any(|c| !c.is_zero()) {
        return None;
    }
    let mut values = Vec::new();
    let mut fact = Scalar::one();
    for l in 0..len {
        if l > 0 {
            fact *= Scalar::from_integer((l as i64).into());
        }
        values.push(args.iter().map(|s| s[l].scale(&fact)).collect());
    }
    Some(JetSample { residue, values, base })
}

impl JetSample {
    /// Evaluates a polynomial in `d^ℓ x_j` at the jet.
    pub fn evaluate(&self, p: &DiffPoly) -> Result<UniPoly> {
        let mut out = UniPoly::zero();
        for (m, c) in p.terms() {
            let mut term = UniPoly::constant(c.clone());
            for (v, e) in m.factors() {
                let (l, j) = match v {
                    Var::X { order, index } => (*order as usize, *index as usize),
                    other => return Err(JetError::AlphabetMismatch(format!("{other} is not an x-jet coordinate"))),
                };
                let value = self
                    .values
                    .get(l)
                    .and_then(|row| row.get(j.wrapping_sub(1)))
                    .ok_or_else(|| JetError::RangeViolation(format!("{v} is beyond the sampled jet")))?;
                term = self.residue.mul(&term, &self.residue.pow(value, *e));
            }
            out = out.add(&term);
        }
        Ok(self.residue.reduce(&out))
    }
}

fn truncate(p: &DiffPoly, order: u32) -> DiffPoly {
    p.filter_terms(|m, _| m.total_degree() <= order)
}

/// Order of vanishing of `g|_X` at `point ∈ X`, computed through the local
/// parametrization `x_j = φ(other coordinates)` for the largest `j` with
/// `f_{x_j}(point) ≠ 0`. Returns `max_order + 1` when no term of degree at
/// most `max_order` survives.
pub fn vanishing_order_at_point(g: &DiffPoly, f: &DiffPoly, point: &[Scalar], max_order: u32) -> Result<u32> {
    let n = point.len() as u32;
    let at = |v: &Var| match v {
        Var::X { order: 0, index } if (1..=n).contains(index) => Some(point[*index as usize - 1].clone()),
        _ => None,
    };
    if !f.evaluate(&at)?.is_zero() {
        return Err(JetError::SingularPoint("the point is not on the hypersurface".into()));
    }
    let mut solved = None;
    for j in (1..=n).rev() {
        let c = f.partial(&Var::x(j)).evaluate(&at)?;
        if !c.is_zero() {
            solved = Some((j, c));
            break;
        }
    }
    let (j, c) = solved.ok_or_else(|| JetError::SingularPoint("all partial derivatives vanish".into()))?;
    let shift = |p: &DiffPoly| {
        p.substitute_with(&|v: &Var| match v {
            Var::X { order: 0, index } if (1..=n).contains(index) => {
                Some(&DiffPoly::var(v.clone()) + &DiffPoly::constant(point[*index as usize - 1].clone()))
            }
            _ => None,
        })
    };
    let y = Var::x(j);
    let powers_in_y = |p: &DiffPoly| -> Vec<DiffPoly> {
        let mut out = vec![DiffPoly::zero(); p.degree_in(&y) as usize + 1];
        for (m, coeff) in p.terms() {
            let (e, rest) = m.strip(&y);
            out[e as usize].add_term(rest, coeff.clone());
        }
        out
    };
    let compose = |parts: &[DiffPoly], phi: &DiffPoly| -> DiffPoly {
        let mut out = DiffPoly::zero();
        let mut power = DiffPoly::one();
        for (k, a) in parts.iter().enumerate() {
            if k > 0 {
                power = truncate(&(&power * phi), max_order);
            }
            out += truncate(&(a * &power), max_order);
        }
        out
    };
    let f_parts = powers_in_y(&shift(f));
    let inv = Scalar::one() / c;
    let mut phi = DiffPoly::zero();
    for _ in 0..=max_order {
        let residual = compose(&f_parts, &phi);
        if residual.is_zero() {
            break;
        }
        phi = &phi - &residual.scale(&inv);
    }
    let restricted = compose(&powers_in_y(&shift(g)), &phi);
    Ok(restricted.terms().map(|(m, _)| m.total_degree()).min().unwrap_or(max_order + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core_poly::parse_poly;
    use core_poly::scalar::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fermat_tangent_line_order() {
        let f = parse_poly("x1^4 + x2^4 - 1").unwrap();
        let point = [int(0), int(1)];
        assert_eq!(vanishing_order_at_point(&parse_poly("x2 - 1").unwrap(), &f, &point, 10).unwrap(), 4);
        assert_eq!(vanishing_order_at_point(&parse_poly("x2 + 3").unwrap(), &f, &point, 10).unwrap(), 0);
        let multiple = &f * &parse_poly("x1 + x2^2").unwrap();
        assert_eq!(vanishing_order_at_point(&multiple, &f, &point, 10).unwrap(), 11);
        assert!(vanishing_order_at_point(&parse_poly("x1").unwrap(), &f, &[int(1), int(1)], 3).is_err());
    }

    #[test]
    fn sampled_jets_lie_on_the_hypersurface() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = parse_poly("x1^3 + x2^3 + x3^3 - 1").unwrap();
        let jet = (0..10).find_map(|_| sample_jet(&f, 3, 2, &mut rng)).expect("a squarefree fibre");
        for l in 0..=2 {
            assert!(jet.evaluate(&f.total_derivative_n(l)).unwrap().is_zero(), "order {l}");
        }
    }

    #[test]
    fn residue_inverse() {
        let r = Residue::new(UniPoly::from_ints(&[-2, 0, 1]));
        let a = UniPoly::from_ints(&[1, 1]);
        let inv = r.inverse(&a).unwrap();
        assert_eq!(r.mul(&a, &inv), UniPoly::constant(Scalar::one()));
    }
}
