//! Exact identities of the elimination, counting and solving stages,
//! checked against oracles implemented here.

use core_poly::scalar::int;
use core_poly::{parse_poly, DiffPoly, Monomial, Scalar, Var};
use jet_constructor::counting::{dimension_by_rank, z_monomials};
use jet_constructor::elimination::{kappa_recursion, within_factorial_bound};
use jet_constructor::system::{assemble_system, primitive, q_from_vector, AssemblyOptions};
use jet_constructor::*;
use jetfiber::UniversalPoly;
use num::complex::Complex64;
use num::{BigInt, BigRational, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `Σ c_i·d^i f`, expanded from scratch.
fn combination(f: &DiffPoly, cofactors: &[DiffPoly]) -> DiffPoly {
    cofactors.iter().enumerate().map(|(i, c)| c * &f.total_derivative_n(i as u32)).sum()
}

fn check_table(f: &DiffPoly, n: u32, k: u32) {
    let table = eliminate_dx1(f, n, k).unwrap();
    let f_x1 = f.partial(&Var::x(1));
    for row in &table.rows {
        let lhs = &(&f_x1.pow(row.kappa) * &DiffPoly::var(Var::dx(row.ell, 1))) - &row.p;
        assert_eq!(lhs, combination(f, &row.cofactors), "order {} of {f}", row.ell);
        assert!(row.p.variables().iter().all(|v| !(v.index() == Some(1) && v.is_differential())));
    }
}

#[test]
fn elimination_soundness_on_fermat() {
    for (n, delta) in [(2, 3), (2, 4), (3, 4)] {
        let f = affine_part(&fermat(n, delta));
        check_table(&f, n, 3);
    }
}

#[test]
fn first_row_is_minus_the_remaining_gradient() {
    for (n, delta) in [(2, 4), (3, 4)] {
        let f = affine_part(&fermat(n, delta));
        let table = eliminate_dx1(&f, n, 1).unwrap();
        let expected: DiffPoly =
            (2..=n).map(|r| -&(&f.partial(&Var::x(r)) * &DiffPoly::var(Var::dx(1, r)))).sum();
        assert_eq!(table.rows[0].kappa, 1);
        assert_eq!(table.rows[0].p, expected);
    }
}

#[test]
fn second_order_power_exceeds_the_factorial() {
    assert_eq!(kappa_recursion(3), vec![1, 3, 5]);
    assert!(!within_factorial_bound(3, 2));
    assert!(within_factorial_bound(5, 3));
    let table = eliminate_dx1(&affine_part(&fermat(2, 4)), 2, 2).unwrap();
    assert_eq!(table.minimal_kappa(2).unwrap(), 3);
}

fn small_affine(n: u32, delta: u32, seed: u64) -> DiffPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = affine_part(&UniversalPoly::random_concrete(n, delta, 6, &mut rng));
    f += DiffPoly::term(Monomial::var_pow(Var::x(1), delta), int(1));
    f
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn elimination_soundness_on_random_polynomials(seed in any::<u64>(), delta in 2u32..=4) {
        check_table(&small_affine(2, delta, seed), 2, 3);
    }
}

/// Rank of integer rows modulo a large prime.
fn rank_mod_p(mut rows: Vec<Vec<i64>>) -> usize {
    const P: i64 = 1_000_000_007;
    let pow = |mut b: i64, mut e: i64| {
        let mut r = 1i64;
        b = b.rem_euclid(P);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    };
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c].rem_euclid(P) != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = pow(rows[rank][c], P - 2);
        for i in 0..rows.len() {
            if i != rank && rows[i][c].rem_euclid(P) != 0 {
                let factor = rows[i][c].rem_euclid(P) * inv % P;
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] - factor * rows[rank][j]).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn random_form(d: u32, rng: &mut ChaCha8Rng) -> DiffPoly {
    z_monomials(3, d).into_iter().map(|m| DiffPoly::term(m, int(rng.gen_range(-5..=5)))).sum()
}

/// `dim (ℚ[z]/(f, g))_q` by dense modular linear algebra.
fn quotient_dimension(f: &DiffPoly, g: &DiffPoly, q: u32) -> usize {
    let basis = z_monomials(3, q);
    let mut rows = Vec::new();
    for h in [f, g] {
        for m in z_monomials(3, q - h.total_degree()) {
            let prod = h.mul_term(&m, &int(1));
            rows.push(basis.iter().map(|b| prod.coefficient(b).to_integer().to_i64().unwrap()).collect());
        }
    }
    basis.len() - rank_mod_p(rows)
}

#[test]
fn section_count_matches_brute_force_rank() {
    let mut rng = ChaCha8Rng::seed_from_u64(35);
    for delta in 1..=3 {
        for s in 1..=3 {
            let f = random_form(delta, &mut rng);
            let g = random_form(s, &mut rng);
            for q in delta + s + 3..=delta + s + 6 {
                let count = dim_sections_on_s(3, delta, s, q).unwrap();
                let brute = quotient_dimension(&f, &g, q);
                assert_eq!(count.value, BigInt::from(brute), "delta {delta}, s {s}, q {q}");
                if q <= delta + s + 4 {
                    assert_eq!(dimension_by_rank(&f, &g, 3, q), brute);
                }
                assert!(BigRational::from_integer(count.value) <= count.upper_bound);
            }
        }
    }
}

fn count_solutions(m: u32, weights: &[u32]) -> u64 {
    match weights.split_first() {
        None => u64::from(m == 0),
        Some((w, rest)) => (0..=m / w).map(|k| count_solutions(m - k * w, rest)).sum(),
    }
}

#[test]
fn count_bounds_bracket_exhaustive_counts() {
    for r in 1..=4usize {
        let mut tails = vec![vec![1u32]];
        for _ in 1..r {
            tails = tails
                .into_iter()
                .flat_map(|t| (*t.last().unwrap()..=4).map(move |w| [t.clone(), vec![w]].concat()))
                .collect();
        }
        for weights in tails {
            for m in 0..=20 {
                let (lo, hi) = monomial_count_bounds(m, &weights).unwrap();
                let exact = BigInt::from(count_solutions(m, &weights));
                assert!(lo <= exact && exact <= hi, "weights {weights:?}, m {m}");
            }
        }
    }
}

proptest! {
    #[test]
    fn count_bounds_hold_for_sampled_weights(mut tail in proptest::collection::vec(1u32..=4, 0..3), m in 0u32..=20) {
        tail.sort();
        let weights = [vec![1], tail].concat();
        let (lo, hi) = monomial_count_bounds(m, &weights).unwrap();
        let exact = BigInt::from(count_solutions(m, &weights));
        prop_assert!(lo <= exact && exact <= hi);
    }
}

/// The points of `S = {f = 0, f_{x1} = 1}` for the plane Fermat curve of
/// degree `δ`: `x1^{δ−1} = 1/δ`, `x2^δ = 1 − x1^δ`.
fn fermat_s_points(delta: u32) -> Vec<[Complex64; 2]> {
    let d = delta as f64;
    let mut out = Vec::new();
    for a in 0..delta - 1 {
        let x1 = Complex64::from_polar((1.0 / d).powf(1.0 / (d - 1.0)), 2.0 * std::f64::consts::PI * a as f64 / (d - 1.0));
        let rhs = Complex64::new(1.0, 0.0) - x1.powu(delta);
        for b in 0..delta {
            let x2 = rhs.powf(1.0 / d) * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * b as f64 / d);
            out.push([x1, x2]);
        }
    }
    out
}

fn eval_complex(p: &DiffPoly, point: &[Complex64; 2]) -> Complex64 {
    p.terms()
        .map(|(m, c)| {
            m.factors().iter().fold(Complex64::new(c.to_f64().unwrap(), 0.0), |acc, (v, e)| {
                acc * point[v.index().unwrap() as usize - 1].powu(*e)
            })
        })
        .sum()
}

#[test]
fn solutions_vanish_on_the_fermat_intersection() {
    let mut solved = 0;
    for delta in 3..=6 {
        let f = affine_part(&fermat(2, delta));
        let points = fermat_s_points(delta);
        for point in &points {
            assert!(eval_complex(&f, point).norm() < 1e-9);
            assert!((eval_complex(&f.partial(&Var::x(1)), point) - 1.0).norm() < 1e-9);
        }
        for m in 1..=2 {
            for m0 in 0..=3 {
                if m0 + 2 * m >= delta {
                    continue;
                }
                let system = assemble_system(&f, 2, m0, m, AssemblyOptions::default()).unwrap();
                let table = eliminate_dx1(&f, 2, 1).unwrap();
                for v in solve_nullspace(&system) {
                    let q = q_from_vector(&system, &v);
                    let image = table.eliminate(&q, system.power).unwrap();
                    for (g, c) in image.collect_by(Var::is_differential) {
                        let scale: f64 = c.terms().map(|(_, x)| x.to_f64().unwrap().abs()).sum();
                        for point in &points {
                            assert!(eval_complex(&c, point).norm() <= 1e-9 * scale.max(1.0), "{g} at delta {delta}");
                        }
                    }
                    solved += 1;
                }
            }
        }
    }
    assert!(solved > 0);
}

#[test]
fn nullspace_basis_is_canonical() {
    let f = affine_part(&fermat(2, 4));
    let system = assemble_system(&f, 2, 1, 1, AssemblyOptions::default()).unwrap();
    let basis = solve_nullspace(&system);
    assert_eq!(basis.len(), 1);
    assert_eq!(basis[0].iter().find(|c| !c.is_zero()), Some(&int(1)));
    let q = q_from_vector(&system, &primitive(&basis[0]));
    assert_eq!(q, parse_poly("x2*dx1 - x1*dx2 + 4*dx2").unwrap());
}

#[test]
fn smallest_fermat_instance_certifies() {
    let opts = CertificateOptions::default();
    let hit = search_smallest(2, 30, 6, 6, &opts).unwrap().expect("an instance in the search box");
    assert_eq!((hit.delta, hit.m0, hit.m), (4, 1, 1));
    let cert = construct_certificate(&fermat(2, hit.delta), hit.m0, hit.m, &opts).unwrap();
    assert!(all_pass(&cert.report), "{:?}", cert.report);
    assert_eq!(cert.power, 2);
    assert_eq!(cert.vanishing_order_at_infinity, 0);
    let reread = JetCertificate::from_json(&cert.to_json().unwrap()).unwrap();
    assert_eq!(reread, cert);
    assert!(all_pass(&verify_certificate(&reread, &opts)));
}

#[test]
fn certificates_are_deterministic() {
    let opts = CertificateOptions::default();
    let a = construct_certificate(&fermat(2, 5), 1, 1, &opts).unwrap().to_json().unwrap();
    let b = construct_certificate(&fermat(2, 5), 1, 1, &opts).unwrap().to_json().unwrap();
    assert_eq!(a, b);
}

fn status(report: &[CheckEntry], check: &str) -> Option<bool> {
    report.iter().find(|e| e.check == check).unwrap().pass
}

#[test]
fn tampered_and_degenerate_certificates_are_rejected() {
    let opts = CertificateOptions::default();
    let cert = construct_certificate(&fermat(2, 4), 1, 1, &opts).unwrap();

    let mut tampered = cert.clone();
    tampered.q.add_term(Monomial::var(Var::dx(1, 2)), int(1));
    let report = verify_certificate(&tampered, &opts);
    assert_eq!(status(&report, "ideal_membership"), Some(false));
    assert_eq!(status(&report, "grading"), Some(true));

    let mut zero = cert.clone();
    zero.q = DiffPoly::zero();
    let report = verify_certificate(&zero, &opts);
    assert_eq!(status(&report, "nonzero"), Some(false));
    assert!(!all_pass(&report));

    let mut heavy = cert.clone();
    heavy.m0 = 2;
    assert_eq!(status(&verify_certificate(&heavy, &opts), "degree_condition"), Some(false));

    let mut on_x = cert.clone();
    on_x.q = &affine_part(&cert.f) * &parse_poly("dx2").unwrap();
    let report = verify_certificate(&on_x, &opts);
    assert_eq!(status(&report, "nonvanishing_on_jets"), None);
    assert_eq!(status(&report, "grading"), Some(false));
}

#[test]
fn invalid_parameters_are_reported() {
    let opts = CertificateOptions::default();
    assert!(matches!(construct_certificate(&fermat(2, 4), 2, 1, &opts), Err(JetError::GradingViolation { .. })));
    assert_eq!(construct_certificate(&fermat(2, 3), 0, 1, &opts), Err(JetError::NoSolution));
    let tiny = assemble_system(&affine_part(&fermat(2, 4)), 2, 1, 1, AssemblyOptions { minimal_power: true }).unwrap();
    assert_eq!(tiny.power, 1);
}

#[test]
fn fermat_tangent_order_equals_degree() {
    let f = affine_part(&fermat(2, 4));
    let point = [Scalar::zero(), int(1)];
    assert_eq!(vanishing_order_at_point(&parse_poly("x2 - 1").unwrap(), &f, &point, 8).unwrap(), 4);
}
