//! Certificates for jet differentials `Q/(f_{x1} − 1)`: construction,
//! independent verification and the canonical JSON form.

use std::collections::BTreeMap;

use core_poly::scalar::{parse_scalar, to_fraction_string};
use core_poly::{degree_in_base, weight, DiffPoly, Monomial, MonomialOrder, MultiIndex, Scalar, Var};
use jetfiber::{Coefficients, UniversalPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::elimination::{affine_part, eliminate_dx1, in_ideal, required_power};
use crate::error::{JetError, Result};
use crate::germ::sample_jet;
use crate::system::{assemble_system, default_power, primitive, q_from_vector, solve_nullspace, AssemblyOptions};

/// Certificate format version.
pub const CERTIFICATE_VERSION: u32 = 1;

/// One entry of a verification report. `pass` is `None` for an
/// inconclusive check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckEntry {
    /// Check name.
    pub check: String,
    /// Outcome.
    pub pass: Option<bool>,
    /// Human-readable evidence.
    pub detail: String,
}

impl CheckEntry {
    fn new(check: &str, pass: Option<bool>, detail: impl Into<String>) -> CheckEntry {
        CheckEntry { check: check.into(), pass, detail: detail.into() }
    }
}

/// Names of the checks in report order.
pub const CHECKS: [&str; 5] = ["nonzero", "grading", "degree_condition", "ideal_membership", "nonvanishing_on_jets"];

/// A jet differential `Q` with its parameters and verification report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetCertificate {
    /// Format version.
    pub version: u32,
    /// Dimension.
    pub n: u32,
    /// Degree of `f`.
    pub delta: u32,
    /// Degree bound of `Q` in `x`.
    pub m0: u32,
    /// Weight of `Q`.
    pub m: u32,
    /// Power `N` of `f_{x1}`.
    pub power: u32,
    /// The homogeneous polynomial defining `X`.
    pub f: UniversalPoly,
    /// The jet differential `Q` in `x_j` and `d^ℓx_j`.
    pub q: DiffPoly,
    /// Guaranteed order of vanishing of `Q/(f_{x1} − 1)` along the
    /// hyperplane at infinity: `δ − 1 − m0 − 2m`.
    pub vanishing_order_at_infinity: i64,
    /// Verification report.
    pub report: Vec<CheckEntry>,
}

/// Options for construction and verification.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertificateOptions {
    /// Use the smallest clearing power of `f_{x1}`.
    pub minimal_power: bool,
    /// Seed for monomial orders and sampled jets.
    pub seed: u64,
    /// Number of sampled jets or monomial orders tried before giving up.
    pub retry_cap: usize,
}

impl Default for CertificateOptions {
    fn default() -> CertificateOptions {
        CertificateOptions { minimal_power: false, seed: 20240607, retry_cap: 16 }
    }
}

/// `δ − 1 − m0 − 2m`.
pub fn vanishing_order_at_infinity(delta: u32, m0: u32, m: u32) -> i64 {
    delta as i64 - 1 - m0 as i64 - 2 * m as i64
}

fn check_grading(n: u32, delta: u32, m0: u32, m: u32) -> Result<()> {
    if m0 + 2 * m >= delta {
        return Err(JetError::GradingViolation { lhs: (m0 + 2 * m).into(), delta: delta.into() });
    }
    if n < 2 {
        return Err(JetError::RangeViolation(format!("dimension n = {n} must be at least 2")));
    }
    Ok(())
}

/// The solution space of the assembled system, as polynomials `Q` with
/// coprime integer coefficients in canonical order.
pub fn solution_basis(f: &UniversalPoly, m0: u32, m: u32, opts: &CertificateOptions) -> Result<Vec<DiffPoly>> {
    check_grading(f.n, f.delta, m0, m)?;
    let system = assemble_system(&affine_part(f), f.n, m0, m, AssemblyOptions { minimal_power: opts.minimal_power })?;
    Ok(solve_nullspace(&system).iter().map(|v| q_from_vector(&system, &primitive(v))).collect())
}

/// Solves the system and certifies its first solution.
pub fn construct_certificate(f: &UniversalPoly, m0: u32, m: u32, opts: &CertificateOptions) -> Result<JetCertificate> {
    if !matches!(f.coefficients, Coefficients::Concrete(_)) {
        return Err(JetError::RangeViolation("f must have concrete coefficients".into()));
    }
    let basis = solution_basis(f, m0, m, opts)?;
    let q = basis.into_iter().next().ok_or(JetError::NoSolution)?;
    let affine = affine_part(f);
    let k = f.n.saturating_sub(1).max(1);
    let kappas = eliminate_dx1(&affine, f.n, k)?.kappas();
    let power = if opts.minimal_power { required_power(&kappas, m) } else { default_power(f.n, m) };
    let mut cert = JetCertificate {
        version: CERTIFICATE_VERSION,
        n: f.n,
        delta: f.delta,
        m0,
        m,
        power,
        f: f.clone(),
        q,
        vanishing_order_at_infinity: vanishing_order_at_infinity(f.delta, m0, m),
        report: Vec::new(),
    };
    cert.report = verify_certificate(&cert, opts);
    Ok(cert)
}

/// Whether every check passed.
pub fn all_pass(report: &[CheckEntry]) -> bool {
    report.iter().all(|e| e.pass == Some(true))
}

fn x_weights(n: u32, rng: &mut impl Rng) -> BTreeMap<Var, u64> {
    (1..=n).map(|j| (Var::x(j), rng.gen_range(1..=16))).collect()
}

/// Reduces `c` by `{f, g}` under a random weighted order whose leading
/// monomials of `f` and `g` are coprime, so that the pair is a Gröbner
/// basis. Returns the weights and whether the remainder vanishes, or
/// `None` when no such order was found.
fn reduce_by_division(
    c: &DiffPoly,
    f: &DiffPoly,
    g: &DiffPoly,
    orders: &[BTreeMap<Var, u64>],
) -> Result<Option<(BTreeMap<Var, u64>, bool)>> {
    for w in orders {
        let order = MonomialOrder::Weighted(w.clone());
        let lf = f.leading_term(&order).map(|(m, _)| m.clone());
        let lg = g.leading_term(&order).map(|(m, _)| m.clone());
        if let (Some(lf), Some(lg)) = (lf, lg) {
            if lf.is_coprime_to(&lg) {
                let (_, r) = c.div_rem(&[f.clone(), g.clone()], &order)?;
                return Ok(Some((w.clone(), r.is_zero())));
            }
        }
    }
    Ok(None)
}

fn describe_weights(w: &BTreeMap<Var, u64>) -> String {
    w.iter().map(|(v, k)| format!("{v}:{k}")).collect::<Vec<_>>().join(",")
}

fn check_membership(cert: &JetCertificate, rng: &mut ChaCha8Rng, retry_cap: usize) -> CheckEntry {
    let name = CHECKS[3];
    let affine = affine_part(&cert.f);
    let k = cert.n.saturating_sub(1).max(1);
    let table = match eliminate_dx1(&affine, cert.n, k) {
        Ok(t) => t,
        Err(e) => return CheckEntry::new(name, Some(false), format!("elimination failed: {e}")),
    };
    let eliminated = match table.eliminate(&cert.q, cert.power) {
        Ok(p) => p,
        Err(e) => return CheckEntry::new(name, Some(false), format!("elimination failed: {e}")),
    };
    let shift = &table.f_x1 - &DiffPoly::one();
    let orders: Vec<BTreeMap<Var, u64>> = (0..retry_cap.max(1) * 4).map(|_| x_weights(cert.n, rng)).collect();
    let groups = eliminated.collect_by(Var::is_differential);
    let mut methods = Vec::new();
    for (g, c) in &groups {
        let outcome = match reduce_by_division(c, &affine, &shift, &orders) {
            Ok(Some((w, ok))) => {
                methods.push(format!("division[{}]", describe_weights(&w)));
                ok
            }
            Ok(None) => {
                methods.push("bounded cofactors".into());
                in_ideal(c, &[&affine, &shift], cert.n)
            }
            Err(e) => return CheckEntry::new(name, Some(false), format!("division failed: {e}")),
        };
        if !outcome {
            return CheckEntry::new(
                name,
                Some(false),
                format!("coefficient of {g} in f_x1^{}*Q is not in (f, f_x1 - 1)", cert.power),
            );
        }
    }
    methods.dedup();
    CheckEntry::new(
        name,
        Some(true),
        format!(
            "f_x1^{}*Q reduces to 0 modulo (f, f_x1 - 1) in {} group(s) by {}",
            cert.power,
            groups.len(),
            methods.join("; ")
        ),
    )
}

fn check_nonvanishing(cert: &JetCertificate, rng: &mut ChaCha8Rng, retry_cap: usize) -> CheckEntry {
    let name = CHECKS[4];
    let affine = affine_part(&cert.f);
    let order = cert.q.max_order();
    let mut sampled = 0;
    for attempt in 0..retry_cap {
        let Some(jet) = sample_jet(&affine, cert.n, order, rng) else {
            continue;
        };
        sampled += 1;
        match jet.evaluate(&cert.q) {
            Ok(v) if !v.is_zero() => {
                let base: Vec<String> = jet.base.iter().map(core_poly::scalar::to_text).collect();
                return CheckEntry::new(
                    name,
                    Some(true),
                    format!("Q is nonzero at sampled jet {attempt} over x2.. = ({}): value {v}", base.join(", ")),
                );
            }
            Ok(_) => {}
            Err(e) => return CheckEntry::new(name, Some(false), format!("evaluation failed: {e}")),
        }
    }
    CheckEntry::new(
        name,
        None,
        format!("inconclusive: Q vanished at all {sampled} sampled jets ({retry_cap} attempts)"),
    )
}

/// Runs the five checks: `Q ≠ 0`, gradings, `m0 + 2m < δ`, membership of
/// the eliminated `f_{x1}^N·Q` in `(f, f_{x1} − 1)` by division, and a
/// nonzero value of `Q` at a sampled jet of `X`.
pub fn verify_certificate(cert: &JetCertificate, opts: &CertificateOptions) -> Vec<CheckEntry> {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut report = Vec::new();
    let nonzero = !cert.q.is_zero();
    report.push(CheckEntry::new(CHECKS[0], Some(nonzero), if nonzero { "Q has terms" } else { "Q is zero" }));
    let alphabet_ok = cert.q.variables().iter().all(|v| {
        matches!(v, Var::X { order, index } if *order < cert.n.max(2) && (1..=cert.n).contains(index))
    });
    let grading = if !nonzero {
        CheckEntry::new(CHECKS[1], Some(false), "Q is zero")
    } else {
        match (degree_in_base(&cert.q), weight(&cert.q)) {
            (Ok(d), Ok(w)) => CheckEntry::new(
                CHECKS[1],
                Some(alphabet_ok && d <= cert.m0 && w == cert.m),
                format!("degree {d} (bound {}), weight {w} (expected {}), alphabet ok: {alphabet_ok}", cert.m0, cert.m),
            ),
            (d, w) => CheckEntry::new(CHECKS[1], Some(false), format!("degree {d:?}, weight {w:?}")),
        }
    };
    report.push(grading);
    let lhs = cert.m0 + 2 * cert.m;
    report.push(CheckEntry::new(
        CHECKS[2],
        Some(lhs < cert.delta),
        format!("m0 + 2m = {lhs}, delta = {}", cert.delta),
    ));
    if nonzero {
        report.push(check_membership(cert, &mut rng, opts.retry_cap));
        report.push(check_nonvanishing(cert, &mut rng, opts.retry_cap));
    } else {
        report.push(CheckEntry::new(CHECKS[3], Some(false), "Q is zero"));
        report.push(CheckEntry::new(CHECKS[4], Some(false), "Q is zero"));
    }
    report
}

/// The exponent layout of `Q` in JSON: `d^ℓx_j` for `ℓ = 0..n−1`, then
/// `j = 1..n`.
pub fn q_variables(n: u32) -> Vec<Var> {
    (0..n).flat_map(|l| (1..=n).map(move |j| Var::dx(l, j))).collect()
}

impl JetCertificate {
    /// Canonical JSON with sorted keys and rationals as `"p/q"` strings.
    pub fn to_json(&self) -> Result<String> {
        let vars = q_variables(self.n);
        let mut q_terms = Vec::new();
        for (m, c) in self.q.terms() {
            let mut exps = vec![0u32; vars.len()];
            for (v, e) in m.factors() {
                let i = vars
                    .iter()
                    .position(|w| w == v)
                    .ok_or_else(|| JetError::AlphabetMismatch(format!("{v} is outside the jet alphabet")))?;
                exps[i] = *e;
            }
            q_terms.push(json!([exps, to_fraction_string(c)]));
        }
        let f_terms: Vec<Value> = match &self.f.coefficients {
            Coefficients::Concrete(map) => {
                map.iter().map(|(nu, c)| json!([nu.components(), to_fraction_string(c)])).collect()
            }
            Coefficients::Symbolic => return Err(JetError::Format("f must be concrete".into())),
        };
        let report: Vec<BTreeMap<&str, Value>> = self
            .report
            .iter()
            .map(|e| {
                BTreeMap::from([
                    ("check", json!(e.check)),
                    ("detail", json!(e.detail)),
                    ("pass", e.pass.map_or(Value::Null, Value::Bool)),
                ])
            })
            .collect();
        let doc: BTreeMap<&str, Value> = BTreeMap::from([
            ("N", json!(self.power)),
            ("Q", Value::Array(q_terms)),
            ("delta", json!(self.delta)),
            ("f", Value::Array(f_terms)),
            ("m", json!(self.m)),
            ("m0", json!(self.m0)),
            ("n", json!(self.n)),
            ("report", json!(report)),
            ("vanishing_order_at_infinity", json!(self.vanishing_order_at_infinity)),
            ("version", json!(self.version)),
        ]);
        serde_json::to_string_pretty(&doc).map_err(|e| JetError::Format(e.to_string()))
    }

    /// Parses the JSON produced by [`JetCertificate::to_json`].
    pub fn from_json(text: &str) -> Result<JetCertificate> {
        let doc: Value = serde_json::from_str(text).map_err(|e| JetError::Format(e.to_string()))?;
        let bad = |what: &str| JetError::Format(format!("missing or malformed field `{what}`"));
        let uint = |key: &str| -> Result<u32> {
            doc.get(key).and_then(Value::as_u64).and_then(|v| u32::try_from(v).ok()).ok_or_else(|| bad(key))
        };
        let (version, n, delta, m0, m, power) = (uint("version")?, uint("n")?, uint("delta")?, uint("m0")?, uint("m")?, uint("N")?);
        let term = |t: &Value, key: &str| -> Result<(Vec<u32>, Scalar)> {
            let pair = t.as_array().filter(|a| a.len() == 2).ok_or_else(|| bad(key))?;
            let exps = pair[0]
                .as_array()
                .ok_or_else(|| bad(key))?
                .iter()
                .map(|e| e.as_u64().and_then(|v| u32::try_from(v).ok()).ok_or_else(|| bad(key)))
                .collect::<Result<Vec<u32>>>()?;
            let c = parse_scalar(pair[1].as_str().ok_or_else(|| bad(key))?)?;
            Ok((exps, c))
        };
        let mut f_coeffs = Vec::new();
        for t in doc.get("f").and_then(Value::as_array).ok_or_else(|| bad("f"))? {
            let (exps, c) = term(t, "f")?;
            f_coeffs.push((MultiIndex::new(exps), c));
        }
        let f = UniversalPoly::concrete(n, delta, f_coeffs)?;
        let vars = q_variables(n);
        let mut q = DiffPoly::zero();
        for t in doc.get("Q").and_then(Value::as_array).ok_or_else(|| bad("Q"))? {
            let (exps, c) = term(t, "Q")?;
            if exps.len() != vars.len() {
                return Err(bad("Q"));
            }
            q.add_term(Monomial::from_pairs(vars.iter().cloned().zip(exps)), c);
        }
        let vanishing_order_at_infinity =
            doc.get("vanishing_order_at_infinity").and_then(Value::as_i64).ok_or_else(|| bad("vanishing_order_at_infinity"))?;
        let mut report = Vec::new();
        for e in doc.get("report").and_then(Value::as_array).ok_or_else(|| bad("report"))? {
            let check = e.get("check").and_then(Value::as_str).ok_or_else(|| bad("report"))?;
            let detail = e.get("detail").and_then(Value::as_str).ok_or_else(|| bad("report"))?;
            let pass = match e.get("pass") {
                Some(Value::Bool(b)) => Some(*b),
                Some(Value::Null) => None,
                _ => return Err(bad("report")),
            };
            report.push(CheckEntry::new(check, pass, detail));
        }
        Ok(JetCertificate { version, n, delta, m0, m, power, f, q, vanishing_order_at_infinity, report })
    }
}

/// An instance with a nontrivial solution found by [`search_smallest`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchHit {
    /// Degree of the Fermat polynomial.
    pub delta: u32,
    /// Degree bound of `Q`.
    pub m0: u32,
    /// Weight of `Q`.
    pub m: u32,
    /// Dimension of the solution space.
    pub nullity: usize,
}

/// The smallest `δ ≤ max_delta` (then smallest `m`, then `m0`) with
/// `m0 + 2m < δ`, `1 ≤ m ≤ max_m`, `m0 ≤ max_m0`, for which the system of
/// the Fermat polynomial of degree `δ` in dimension `n` has positive nullity.
pub fn search_smallest(n: u32, max_delta: u32, max_m: u32, max_m0: u32, opts: &CertificateOptions) -> Result<Option<SearchHit>> {
    for delta in 2..=max_delta {
        let f = crate::elimination::fermat(n, delta);
        for m in 1..=max_m {
            for m0 in 0..=max_m0 {
                if m0 + 2 * m >= delta {
                    continue;
                }
                let nullity = solution_basis(&f, m0, m, opts)?.len();
                if nullity > 0 {
                    return Ok(Some(SearchHit { delta, m0, m, nullity }));
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elimination::fermat;
    use core_poly::parse_poly;

    #[test]
    fn json_round_trip() {
        let cert = JetCertificate {
            version: 1,
            n: 2,
            delta: 4,
            m0: 1,
            m: 1,
            power: 2,
            f: fermat(2, 4),
            q: parse_poly("x2*dx1 + (4 - x1)*dx2").unwrap(),
            vanishing_order_at_infinity: 0,
            report: vec![CheckEntry::new("nonzero", Some(true), "ok"), CheckEntry::new("x", None, "?")],
        };
        let text = cert.to_json().unwrap();
        assert_eq!(JetCertificate::from_json(&text).unwrap(), cert);
        assert!(text.find("\"N\"").unwrap() < text.find("\"Q\"").unwrap());
        assert!(text.contains("\"1/1\""));
    }

    #[test]
    fn q_alphabet_layout() {
        assert_eq!(q_variables(2), vec![Var::x(1), Var::x(2), Var::dx(1, 1), Var::dx(1, 2)]);
        assert_eq!(q_variables(3).len(), 9);
    }
}
