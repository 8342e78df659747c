//! Exact evaluation of jet differentials along rational curves: every
//! `d^ℓ x_j` becomes the `ℓ`-th derivative of `F_j/F_0` at `ζ_0`, and every
//! logarithmic symbol the corresponding derivative of a logarithm.

use std::collections::BTreeMap;

use core_poly::scalar::factorial;
use core_poly::{DiffPoly, Scalar, UniPoly, Var};
use logpole_smt::LogPoleJetDiff;
use num::Zero;

use crate::curve::RationalCurve;
use crate::error::{NevanlinnaError, Result};

/// A power series in `t = ζ − ζ_0`, truncated to a fixed length.
type Series = Vec<Scalar>;

fn taylor(p: &UniPoly, at: &Scalar, len: usize) -> Series {
    let shifted = p.shift(at);
    (0..len).map(|i| shifted.coeff(i)).collect()
}

fn series_mul(a: &Series, b: &Series) -> Series {
    let mut out = vec![Scalar::zero(); a.len()];
    for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        for (j, bj) in b.iter().enumerate().take(a.len() - i) {
            out[i + j] += ai * bj;
        }
    }
    out
}

fn series_div(a: &Series, b: &Series) -> Series {
    let mut out: Series = Vec::with_capacity(a.len());
    for k in 0..a.len() {
        let mut v = a[k].clone();
        for i in 1..=k {
            v -= &b[i] * &out[k - i];
        }
        out.push(v / &b[0]);
    }
    out
}

/// `d^ℓ log A` at `t = 0` for `ℓ = 0..len` (entry 0 unused), from
/// `d^ℓ log A = d^{ℓ−1}(A′/A)`.
fn log_derivatives(a: &Series) -> Vec<Scalar> {
    let mut da: Series = (1..a.len()).map(|k| &a[k] * Scalar::from_integer((k as i64).into())).collect();
    da.push(Scalar::zero());
    let q = series_div(&da, a);
    (0..a.len()).map(|l| if l == 0 { Scalar::zero() } else { &q[l - 1] * factorial(l as u32 - 1) }).collect()
}

fn compose(g: &DiffPoly, coords: &[Series], len: usize) -> Result<Series> {
    let mut out = vec![Scalar::zero(); len];
    for (m, c) in g.terms() {
        let mut term = vec![Scalar::zero(); len];
        term[0] = c.clone();
        for (v, e) in m.factors() {
            let s = match v {
                Var::X { order: 0, index } if (1..=coords.len() as u32).contains(index) => &coords[*index as usize - 1],
                other => return Err(NevanlinnaError::AlphabetMismatch(format!("{other} in a registered function"))),
            };
            for _ in 0..*e {
                term = series_mul(&term, s);
            }
        }
        for (o, t) in out.iter_mut().zip(term) {
            *o += t;
        }
    }
    Ok(out)
}

/// The germ of the curve at `ζ_0` in the affine chart `F_0 ≠ 0`.
struct Germ {
    coords: Vec<Series>,
    len: usize,
}

impl Germ {
    fn new(phi: &RationalCurve, zeta0: &Scalar, order: u32) -> Result<Germ> {
        let len = order as usize + 1;
        let den = taylor(&phi.components[0], zeta0, len);
        if den[0].is_zero() {
            return Err(NevanlinnaError::NotAnalytic(format!("F_0 vanishes at {zeta0}")));
        }
        let coords = phi.components[1..].iter().map(|c| series_div(&taylor(c, zeta0, len), &den)).collect();
        Ok(Germ { coords, len })
    }

    fn values(&self, omega: &DiffPoly, registry: &BTreeMap<u32, DiffPoly>) -> Result<BTreeMap<Var, Scalar>> {
        let n = self.coords.len() as u32;
        let mut out = BTreeMap::new();
        let mut logs: BTreeMap<(bool, u32), Vec<Scalar>> = BTreeMap::new();
        for v in omega.variables() {
            let value = match &v {
                Var::X { order, index } if (1..=n).contains(index) => {
                    &self.coords[*index as usize - 1][*order as usize] * factorial(*order)
                }
                Var::LogX { order, index } | Var::LogF { order, index } => {
                    let is_f = matches!(v, Var::LogF { .. });
                    if !logs.contains_key(&(is_f, *index)) {
                        let series = if is_f {
                            let g = registry.get(index).ok_or_else(|| {
                                NevanlinnaError::AlphabetMismatch(format!("{v} has no registered function"))
                            })?;
                            compose(g, &self.coords, self.len)?
                        } else if (1..=n).contains(index) {
                            self.coords[*index as usize - 1].clone()
                        } else {
                            return Err(NevanlinnaError::AlphabetMismatch(format!("{v} outside x1..x{n}")));
                        };
                        if series[0].is_zero() {
                            return Err(NevanlinnaError::LogSingularity(format!("{v}: the function vanishes on the curve")));
                        }
                        logs.insert((is_f, *index), log_derivatives(&series));
                    }
                    logs[&(is_f, *index)][*order as usize].clone()
                }
                other => return Err(NevanlinnaError::AlphabetMismatch(format!("{other} is not a jet coordinate"))),
            };
            out.insert(v, value);
        }
        Ok(out)
    }
}

/// The value at `ζ_0` of the pullback of `ω` by `φ`, with `Λ^(ℓ)_i` read as
/// `d^ℓ log` of `registry[i]`.
pub fn eval_pullback_function(
    omega: &DiffPoly,
    registry: &BTreeMap<u32, DiffPoly>,
    phi: &RationalCurve,
    zeta0: &Scalar,
) -> Result<Scalar> {
    let germ = Germ::new(phi, zeta0, omega.max_order())?;
    let values = germ.values(omega, registry)?;
    Ok(omega.evaluate(&|v: &Var| values.get(v).cloned())?)
}

/// The value at `ζ_0` of the pullback of a log-pole jet differential,
/// including its denominator.
pub fn eval_logpole(omega: &LogPoleJetDiff, phi: &RationalCurve, zeta0: &Scalar) -> Result<Scalar> {
    let body = eval_pullback_function(&omega.body, &omega.registry, phi, zeta0)?;
    let germ = Germ::new(phi, zeta0, 0)?;
    let mut value = body;
    for (i, e) in &omega.denominator {
        let g = compose(&omega.registry[i], &germ.coords, 1)?[0].clone();
        if g.is_zero() {
            return Err(NevanlinnaError::LogSingularity(format!("F{i} vanishes on the curve at {zeta0}")));
        }
        for _ in 0..*e {
            value = value / &g;
        }
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core_poly::parse_poly;
    use core_poly::scalar::{frac, int};

    fn curve(components: &[&[i64]]) -> RationalCurve {
        RationalCurve::new(components.iter().map(|c| UniPoly::from_ints(c)).collect()).unwrap()
    }

    #[test]
    fn simple_pullbacks() {
        let none = BTreeMap::new();
        let parabola = curve(&[&[1], &[0, 0, 1]]);
        assert_eq!(eval_pullback_function(&parse_poly("dx1").unwrap(), &none, &parabola, &int(1)).unwrap(), int(2));
        let line = curve(&[&[1], &[0, 1]]);
        let registry = BTreeMap::from([(1, parse_poly("x1").unwrap())]);
        assert_eq!(eval_pullback_function(&parse_poly("L1_1").unwrap(), &registry, &line, &int(2)).unwrap(), frac(1, 2));
        assert_eq!(eval_pullback_function(&parse_poly("lx2_1").unwrap(), &none, &line, &int(2)).unwrap(), frac(-1, 4));
        assert!(matches!(
            eval_pullback_function(&parse_poly("L1_1").unwrap(), &registry, &line, &int(0)),
            Err(NevanlinnaError::LogSingularity(_))
        ));
        let pole = curve(&[&[-1, 1], &[1]]);
        assert!(matches!(
            eval_pullback_function(&parse_poly("x1").unwrap(), &none, &pole, &int(1)),
            Err(NevanlinnaError::NotAnalytic(_))
        ));
    }
}
