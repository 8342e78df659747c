//! Root moduli of rational polynomials: exact squarefree decomposition,
//! Aberth–Ehrlich iteration in double precision, and inclusion disks that
//! bound the error of every computed root.

use core_poly::scalar::to_f64;
use core_poly::UniPoly;
use num::complex::Complex64;
use num::Zero;

/// Computed roots with multiplicities and a rigorous error radius.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    /// `(root, multiplicity)`; an exact root at zero is reported as `0`.
    pub roots: Vec<(Complex64, u32)>,
    /// Every true root lies within this distance of its computed root.
    pub error_bound: f64,
    /// Whether the inclusion disks of each squarefree factor are pairwise
    /// disjoint, so that each disk holds exactly one root.
    pub certified: bool,
}

impl RootSet {
    /// `(|a|, multiplicity)` for every root.
    pub fn moduli(&self) -> Vec<(f64, u32)> {
        self.roots.iter().map(|(z, m)| (z.norm(), *m)).collect()
    }
}

fn horner(c: &[f64], z: Complex64) -> (Complex64, Complex64, f64) {
    let mut p = Complex64::zero();
    let mut dp = Complex64::zero();
    let mut bound = 0.0;
    let r = z.norm();
    for a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
        bound = bound * r + a.abs();
    }
    (p, dp, bound)
}

/// Roots of a squarefree polynomial with `f64` coefficients `c[0..=d]`,
/// `c[d] ≠ 0`, with inclusion radii `d·|p(z_k)|/|c_d·Π_{j≠k}(z_k − z_j)|`
/// where `|p(z_k)|` is enlarged by a bound on the rounding error.
fn aberth(c: &[f64]) -> (Vec<Complex64>, Vec<f64>) {
    let d = c.len() - 1;
    let lead = c[d];
    let radius = c[..d].iter().enumerate().map(|(i, a)| (a / lead).abs().powf(1.0 / (d - i) as f64)).fold(0.0, f64::max).max(1e-3);
    let mut z: Vec<Complex64> =
        (0..d).map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * k as f64 / d as f64 + 0.4)).collect();
    for _ in 0..1000 {
        let mut largest: f64 = 0.0;
        for k in 0..d {
            let (p, dp, _) = horner(c, z[k]);
            if p.is_zero() {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).inv()).sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                largest = largest.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if largest < 1e-17 {
            break;
        }
    }
    let gamma = 4.0 * (d as f64 + 1.0) * f64::EPSILON;
    let radii = (0..d)
        .map(|k| {
            let (p, _, bound) = horner(c, z[k]);
            let denom: f64 = (0..d).filter(|&j| j != k).map(|j| (z[k] - z[j]).norm()).product::<f64>() * lead.abs();
            d as f64 * (p.norm() + gamma * bound) / denom
        })
        .collect();
    (z, radii)
}

/// All roots of a nonzero polynomial with multiplicities.
pub fn isolate_roots(p: &UniPoly) -> RootSet {
    let mut roots = Vec::new();
    let mut error_bound: f64 = 0.0;
    let mut certified = true;
    for (mult, factor) in p.squarefree_decomposition() {
        let Some(deg) = factor.degree().filter(|d| *d > 0) else {
            continue;
        };
        let zeros = factor.coeffs().iter().take_while(|c| c.is_zero()).count();
        if zeros > 0 {
            roots.push((Complex64::zero(), mult));
        }
        if deg == zeros {
            continue;
        }
        let c: Vec<f64> = factor.coeffs()[zeros..].iter().map(to_f64).collect();
        let (z, radii) = aberth(&c);
        for i in 0..z.len() {
            for j in i + 1..z.len() {
                if (z[i] - z[j]).norm() <= radii[i] + radii[j] {
                    certified = false;
                }
            }
        }
        error_bound = radii.iter().fold(error_bound, |acc, r| acc.max(*r));
        roots.extend(z.into_iter().map(|r| (r, mult)));
    }
    if !error_bound.is_finite() {
        certified = false;
    }
    RootSet { roots, error_bound, certified }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_and_repeated_roots() {
        let set = isolate_roots(&UniPoly::from_ints(&[2, -3, 1]));
        let mut m: Vec<f64> = set.moduli().iter().map(|x| x.0).collect();
        m.sort_by(f64::total_cmp);
        assert!((m[0] - 1.0).abs() < 1e-13 && (m[1] - 2.0).abs() < 1e-13);
        assert!(set.certified && set.error_bound < 1e-12);
        let cube = UniPoly::from_ints(&[-1, 1]).pow(3).mul(&UniPoly::from_ints(&[0, 0, 1]));
        let set = isolate_roots(&cube);
        assert_eq!(set.roots.iter().map(|r| r.1).sum::<u32>(), 5);
        assert!(set.roots.contains(&(Complex64::zero(), 2)));
    }

    #[test]
    fn complex_roots() {
        let set = isolate_roots(&UniPoly::from_ints(&[1, 0, 0, 0, 1]));
        assert!(set.moduli().iter().all(|(m, k)| (m - 1.0).abs() < 1e-13 && *k == 1));
        assert!(set.certified);
    }
}
