//! Property tests: counting-function monotonicity, base-point additivity
//! against an independent nested-integral oracle, growth rates, the First
//! Main Theorem, the comparison inequalities and the chain rule for
//! pullbacks.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use core_poly::scalar::{frac, int, to_f64};
use core_poly::{parse_poly, Scalar, UniPoly};
use nevanlinna_numeric::curve::random_polynomial;
use nevanlinna_numeric::functions::eval_complex;
use nevanlinna_numeric::{
    characteristic, characteristic_map, compare_characteristics, counting_function, eval_logpole,
    eval_pullback_function, first_main_theorem_gap, isolate_roots, random_rational_curve, NevanlinnaError, Normalization,
    RationalCurve, RationalFunction, Target,
};
use num::complex::Complex64;
use num::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Constants fitted at `r = 5` may be exceeded by this much at larger
/// radii; a failing inequality grows like `½·log(r/5)`, which is about
/// `1.5` at `r = 100`.
const COMPARISON_TOLERANCE: f64 = 0.1;

/// Base radius of the comparisons. The random roots are rationals with
/// denominators 4 to 8, so none lies on this circle.
const COMPARISON_BASE: f64 = 0.9;

fn curve(components: &[&[i64]]) -> RationalCurve {
    RationalCurve::new(components.iter().map(|c| UniPoly::from_ints(c)).collect()).unwrap()
}

/// `(1/2π)∮ Re(ζ·ΣF_k′·conj F_k)/Σ|F_k|² dθ` by the trapezoid rule, which
/// converges geometrically for smooth periodic integrands.
fn flux(phi: &RationalCurve, rho: f64) -> f64 {
    let derivatives: Vec<UniPoly> = phi.components.iter().map(UniPoly::derivative).collect();
    let samples = 4096;
    let mut total = 0.0;
    for s in 0..samples {
        let z = Complex64::from_polar(rho, TAU * s as f64 / samples as f64);
        let mut num = 0.0;
        let mut den = 0.0;
        for (f, df) in phi.components.iter().zip(&derivatives) {
            let v = eval_complex(f, z);
            num += (z * eval_complex(df, z) * v.conj()).re;
            den += v.norm_sqr();
        }
        total += num / den;
    }
    total / samples as f64
}

/// `∫_{r1}^{r} flux(ρ) dρ/ρ` by composite Simpson in `log ρ`.
fn nested_integral_oracle(phi: &RationalCurve, r: f64, r1: f64) -> f64 {
    let (a, b) = (r1.ln(), r.ln());
    let steps = 400;
    let h = (b - a) / steps as f64;
    let mut total = 0.0;
    for i in 0..=steps {
        let w = if i == 0 || i == steps { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        total += w * flux(phi, (a + h * i as f64).exp());
    }
    total * h / 3.0
}

#[test]
fn counting_function_is_monotone_and_vanishes_inside_the_smallest_root() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let zero = Target::Finite(int(0));
    for _ in 0..20 {
        let p = random_polynomial(5, &mut rng);
        if p.coeff(0).is_zero() || p.degree().unwrap_or(0) == 0 {
            continue;
        }
        let f = RationalFunction::polynomial(p.clone());
        let smallest = isolate_roots(&p).moduli().iter().map(|(m, _)| *m).fold(f64::INFINITY, f64::min);
        assert_eq!(counting_function(&f, &zero, 0.99 * smallest, None).unwrap(), 0.0);
        let mut previous = 0.0;
        for r in [0.1, 0.5, 1.0, 1.5, 2.0, 3.0, 10.0] {
            let v = counting_function(&f, &zero, r, None).unwrap();
            assert!(v >= previous - 1e-14, "{p} at {r}");
            previous = v;
        }
    }
}

#[test]
fn base_point_additivity_and_nested_integral_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..5 {
        let phi = random_rational_curve(2, 3, &mut rng);
        let (r, r2, r1) = (7.3, 2.9, 0.7);
        let whole = characteristic_map(&phi, r, r1).unwrap().value;
        let split = characteristic_map(&phi, r, r2).unwrap().value + characteristic_map(&phi, r2, r1).unwrap().value;
        assert!((whole - split).abs() < 1e-8, "{whole} vs {split}");
        let oracle = nested_integral_oracle(&phi, r, r1);
        assert!((whole - oracle).abs() < 1e-6, "{phi:?}: {whole} vs {oracle}");
    }
}

#[test]
fn line_and_conic_growth() {
    let line = curve(&[&[1], &[0, 1]]);
    let conic = curve(&[&[1], &[0, 1], &[0, 0, 1]]);
    for r in [10.0, 100.0, 1000.0] {
        let t = characteristic_map(&line, r, 0.0).unwrap().value;
        assert!((t - 0.5 * (1.0 + r * r).ln()).abs() < 1e-9);
        let t2 = characteristic_map(&conic, r, 0.0).unwrap().value;
        assert!((t2 / r.ln() - 2.0).abs() < 0.01, "{t2}");
    }
    let constant = curve(&[&[1], &[5]]);
    assert!(characteristic_map(&constant, 50.0, 1.0).unwrap().value.abs() < 1e-12);
}

#[test]
fn degree_asymptotics_of_monic_polynomials() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..10 {
        let d = rng.gen_range(1..=5);
        let p = (0..d).fold(UniPoly::from_ints(&[1]), |acc, _| {
            acc.mul(&UniPoly::new(vec![frac(rng.gen_range(-8..=8), rng.gen_range(1..=4)), int(1)]))
        });
        let f = RationalFunction::polynomial(p);
        let r = 1e3;
        for norm in [Normalization::FourPi, Normalization::Standard] {
            let target = d as f64 * TAU * norm.constant();
            let ratio = characteristic(&f, r, None, norm).unwrap().value / r.ln();
            assert!((ratio / target - 1.0).abs() < 0.02, "degree {d}: {ratio} vs {target}");
        }
    }
}

#[test]
fn constant_functions_have_zero_characteristic() {
    let small = RationalFunction::polynomial(UniPoly::constant(frac(1, 3)));
    assert_eq!(characteristic(&small, 10.0, None, Normalization::FourPi).unwrap().value, 0.0);
    let identity = RationalFunction::polynomial(UniPoly::from_ints(&[0, 1]));
    let t = characteristic(&identity, 1e4, None, Normalization::Standard).unwrap().value;
    assert!((t - 1e4f64.ln()).abs() < 1e-9);
}

fn random_rational_function(rng: &mut ChaCha8Rng) -> RationalFunction {
    loop {
        let num = random_polynomial(3, rng);
        let den = random_polynomial(3, rng);
        if num.coeff(0).is_zero() || den.coeff(0).is_zero() {
            continue;
        }
        if let Ok(f) = RationalFunction::new(num, den) {
            if !f.is_constant() {
                return f;
            }
        }
    }
}

#[test]
fn first_main_theorem_under_the_standard_constant() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..8 {
        let f = random_rational_function(&mut rng);
        let report = first_main_theorem_gap(&f, &[10.0, 100.0, 1000.0], None, Normalization::Standard).unwrap();
        assert!(report.residual < 1e-3, "{f:?}: {report:?}");
        let expected = (to_f64(&f.num.coeff(0)) / to_f64(&f.den.coeff(0))).abs().ln();
        assert!((report.fitted_constant - expected).abs() < 1e-3, "{report:?} vs {expected}");
    }
}

#[test]
fn first_main_theorem_gap_grows_under_the_halved_constant() {
    let f = RationalFunction::new(UniPoly::from_ints(&[-1, 0, 1]), UniPoly::from_ints(&[2])).unwrap();
    let report = first_main_theorem_gap(&f, &[10.0, 100.0, 1000.0], None, Normalization::FourPi).unwrap();
    assert!(report.residual > 1.0, "{report:?}");
}

#[test]
fn comparison_on_random_curves() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..5 {
        let phi = random_rational_curve(2, 3, &mut rng);
        let report = compare_characteristics(&phi, &[5.0, 10.0, 50.0, 100.0], COMPARISON_BASE, Normalization::Standard).unwrap();
        assert!(report.holds(COMPARISON_TOLERANCE), "{phi:?}: {report:?}");
        assert!(report.fitted_constants.iter().all(|c| c.abs() < 10.0), "{report:?}");
    }
}

#[test]
fn comparison_fails_under_the_halved_constant() {
    let line = curve(&[&[1], &[0, 1]]);
    let report = compare_characteristics(&line, &[5.0, 10.0, 50.0, 100.0], COMPARISON_BASE, Normalization::FourPi).unwrap();
    assert!(!report.holds(COMPARISON_TOLERANCE), "{report:?}");
}

#[test]
fn comparison_with_a_pole_component() {
    let phi = RationalCurve::from_ratios(&[
        (UniPoly::from_ints(&[1]), UniPoly::from_ints(&[1])),
        (UniPoly::from_ints(&[0, 1]), UniPoly::from_ints(&[1])),
        (UniPoly::from_ints(&[1]), UniPoly::from_ints(&[-3, 1])),
    ])
    .unwrap();
    assert_eq!(phi.components[0], UniPoly::from_ints(&[-3, 1]));
    let report = compare_characteristics(&phi, &[5.0, 10.0, 50.0], COMPARISON_BASE, Normalization::Standard).unwrap();
    assert!(report.holds(COMPARISON_TOLERANCE), "{report:?}");
    let line = curve(&[&[1], &[0, 1]]);
    let report = compare_characteristics(&line, &[5.0, 10.0, 50.0, 100.0], COMPARISON_BASE, Normalization::Standard).unwrap();
    assert!(report.holds(COMPARISON_TOLERANCE), "{report:?}");
    assert!(report.fitted_constants.iter().all(|c| c.abs() < 1.0));
    let constant = curve(&[&[2], &[3]]);
    let report = compare_characteristics(&constant, &[5.0, 10.0], COMPARISON_BASE, Normalization::Standard).unwrap();
    assert!(report.values.iter().flatten().all(|v| v.abs() < 1e-12));
}

#[test]
fn pole_on_the_circle_is_rejected() {
    let f = RationalFunction::new(UniPoly::from_ints(&[1]), UniPoly::from_ints(&[-2, 1])).unwrap();
    assert_eq!(characteristic(&f, 2.0, None, Normalization::FourPi), Err(NevanlinnaError::PoleOnCircle { r: 2.0 }));
    assert!(characteristic(&f, 2.001, None, Normalization::FourPi).is_ok());
}

fn exact_on_curve(omega: &core_poly::DiffPoly, registry: &BTreeMap<u32, core_poly::DiffPoly>, phi: &RationalCurve, z: f64) -> f64 {
    let scalar = Scalar::new(((z * 1024.0).round() as i64).into(), 1024.into());
    to_f64(&eval_pullback_function(omega, registry, phi, &scalar).unwrap())
}

#[test]
fn chain_rule_against_finite_differences() {
    let phi = curve(&[&[2, 0, 1], &[1, 3, 0, 1], &[-1, 1, 2]]);
    let registry = BTreeMap::from([(1, parse_poly("x1^2 + x2 + 3").unwrap())]);
    let omega = parse_poly("x1*dx2^2 - 3*d2x1 + x2*L1_1 + lx1_2").unwrap();
    let derived = omega.total_derivative();
    let h = 1.0 / 1024.0;
    for z in [0.75, 1.25, 2.0, -1.5, 3.0] {
        let left = exact_on_curve(&omega, &registry, &phi, z - h);
        let right = exact_on_curve(&omega, &registry, &phi, z + h);
        let far_left = exact_on_curve(&omega, &registry, &phi, z - 2.0 * h);
        let far_right = exact_on_curve(&omega, &registry, &phi, z + 2.0 * h);
        let difference = (8.0 * (right - left) - (far_right - far_left)) / (12.0 * h);
        let exact = exact_on_curve(&derived, &registry, &phi, z);
        assert!((difference - exact).abs() < 1e-6 * exact.abs().max(1.0), "at {z}: {difference} vs {exact}");
    }
}

#[test]
fn vanishing_is_detected_exactly() {
    let phi = curve(&[&[1], &[0, 1], &[0, 0, 1]]);
    let none = BTreeMap::new();
    let tangent = parse_poly("dx2 - 2*x1*dx1").unwrap();
    for z in [0, 1, -3, 7] {
        assert!(eval_pullback_function(&tangent, &none, &phi, &int(z)).unwrap().is_zero());
    }
    let at_point = parse_poly("(x1 - 2)*dx1").unwrap();
    assert!(eval_pullback_function(&at_point, &none, &phi, &int(2)).unwrap().is_zero());
    assert!(!eval_pullback_function(&at_point, &none, &phi, &int(3)).unwrap().is_zero());
}

#[test]
fn log_pole_evaluation_divides_by_the_denominator() {
    let omega = logpole_smt::LogPoleJetDiff::new(
        parse_poly("L1_1").unwrap(),
        BTreeMap::from([(1, parse_poly("x1 + 1").unwrap())]),
        BTreeMap::from([(1, 1)]),
        1,
    )
    .unwrap();
    let line = curve(&[&[1], &[0, 1]]);
    assert_eq!(eval_logpole(&omega, &line, &int(1)).unwrap(), frac(1, 4));
    assert!(matches!(eval_logpole(&omega, &line, &int(-1)), Err(NevanlinnaError::LogSingularity(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn counting_function_is_additive_in_the_base_radius(seed in any::<u64>(), r1 in 0.1f64..1.0, gap in 0.1f64..2.0, top in 0.1f64..5.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_polynomial(4, &mut rng);
        let f = RationalFunction::polynomial(p);
        let r2 = r1 + gap;
        let r = r2 + top;
        let zero = Target::Finite(int(0));
        prop_assume!(!f.num.is_zero());
        let whole = counting_function(&f, &zero, r, Some(r1));
        prop_assume!(whole.is_ok());
        let split = counting_function(&f, &zero, r, Some(r2)).unwrap() + counting_function(&f, &zero, r2, Some(r1)).unwrap();
        prop_assert!((whole.unwrap() - split).abs() < 1e-9);
    }

    #[test]
    fn characteristic_is_nonnegative_and_scales_with_the_constant(seed in any::<u64>(), r in 1.5f64..40.0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_rational_function(&mut rng);
        let four_pi = characteristic(&f, r, None, Normalization::FourPi);
        prop_assume!(four_pi.is_ok());
        let four_pi = four_pi.unwrap().value;
        let standard = characteristic(&f, r, None, Normalization::Standard).unwrap().value;
        let counting = counting_function(&f, &Target::Infinity, r, None).unwrap();
        prop_assert!(four_pi >= 0.0 && standard >= four_pi);
        prop_assert!(((standard - counting) - 2.0 * (four_pi - counting)).abs() < 1e-9);
    }
}
