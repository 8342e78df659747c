//! Log-pole jet differentials: a polynomial body in coordinates,
//! differentials and symbols `Λ^(ℓ)_i = d^ℓ log F_i`, a registry of the
//! functions `F_i` and a denominator `Π F_i^{e_i}`.

use std::collections::BTreeMap;
use std::fmt::Write;

use core_poly::{parse_poly, DiffPoly, Var};

use crate::error::{LogPoleError, Result};
use crate::wronskian::dlog_numerator;

/// `body / Π_i F_i^{denominator[i]}` with `Λ^(ℓ)_i` standing for
/// `d^ℓ log F_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogPoleJetDiff {
    /// Polynomial in `x_j`, `d^ℓ x_j` and `Λ^(ℓ)_i`.
    pub body: DiffPoly,
    /// The functions `F_i` by index.
    pub registry: BTreeMap<u32, DiffPoly>,
    /// Exponents of the registered functions in the denominator.
    pub denominator: BTreeMap<u32, u32>,
    /// Dimension.
    pub n: u32,
    /// Jet order: the highest differential order in the body.
    pub k: u32,
}

impl LogPoleJetDiff {
    /// Checks the alphabet and the registry and derives the jet order.
    pub fn new(
        body: DiffPoly,
        registry: BTreeMap<u32, DiffPoly>,
        denominator: BTreeMap<u32, u32>,
        n: u32,
    ) -> Result<LogPoleJetDiff> {
        for v in body.variables() {
            match v {
                Var::X { index, .. } if (1..=n).contains(&index) => {}
                Var::LogF { index, .. } if !registry.contains_key(&index) => {
                    return Err(LogPoleError::UnregisteredSymbol(index));
                }
                Var::LogF { .. } => {}
                other => return Err(LogPoleError::AlphabetMismatch(format!("{other} in a log-pole body"))),
            }
        }
        for i in denominator.keys() {
            if !registry.contains_key(i) {
                return Err(LogPoleError::UnregisteredSymbol(*i));
            }
        }
        for (i, f) in &registry {
            if f.variables().iter().any(|v| !matches!(v, Var::X { order: 0, index } if (1..=n).contains(index))) {
                return Err(LogPoleError::AlphabetMismatch(format!("F{i} = {f} is not a polynomial in x1..x{n}")));
            }
        }
        let denominator = denominator.into_iter().filter(|(_, e)| *e > 0).collect();
        let k = body.max_order();
        Ok(LogPoleJetDiff { body, registry, denominator, n, k })
    }

    /// Weight of the body, counting `d^ℓ x_j` and `Λ^(ℓ)_i` with weight `ℓ`.
    pub fn weight(&self) -> u32 {
        self.body.max_weight()
    }

    /// `Σ ν·ℓ` over the factors `(Λ^(ℓ)_i)^ν` of each monomial, maximized
    /// over monomials, for every registered index.
    pub fn log_contributions(&self) -> BTreeMap<u32, u32> {
        let mut out: BTreeMap<u32, u32> = self.registry.keys().map(|i| (*i, 0)).collect();
        for (m, _) in self.body.terms() {
            let mut here: BTreeMap<u32, u32> = BTreeMap::new();
            for (v, e) in m.factors() {
                if let Var::LogF { order, index } = v {
                    *here.entry(*index).or_default() += order * e;
                }
            }
            for (i, w) in here {
                let slot = out.entry(i).or_default();
                *slot = (*slot).max(w);
            }
        }
        out
    }

    /// The rational expression `numerator / Π F_i^{e_i}` with every
    /// `Λ^(ℓ)_i` replaced by `N_ℓ / F_i^ℓ`. Returns the numerator and the
    /// exponents `e_i`.
    pub fn expand(&self) -> (DiffPoly, BTreeMap<u32, u32>) {
        let top = self.log_contributions();
        let mut numerators: BTreeMap<(u32, u32), DiffPoly> = BTreeMap::new();
        for (m, _) in self.body.terms() {
            for (v, _) in m.factors() {
                if let Var::LogF { order, index } = v {
                    numerators.entry((*index, *order)).or_insert_with(|| dlog_numerator(&self.registry[index], *order));
                }
            }
        }
        let mut out = DiffPoly::zero();
        for (m, c) in self.body.terms() {
            let (logs, rest) = m.split(|v| matches!(v, Var::LogF { .. }));
            let mut term = DiffPoly::term(rest, c.clone());
            let mut used: BTreeMap<u32, u32> = BTreeMap::new();
            for (v, e) in logs.factors() {
                if let Var::LogF { order, index } = v {
                    term = &term * &numerators[&(*index, *order)].pow(*e);
                    *used.entry(*index).or_default() += order * e;
                }
            }
            for (i, w) in &top {
                let spare = w - used.get(i).copied().unwrap_or(0);
                if spare > 0 {
                    term = &term * &self.registry[i].pow(spare);
                }
            }
            out += term;
        }
        let mut den = self.denominator.clone();
        for (i, w) in top {
            if w > 0 {
                *den.entry(i).or_default() += w;
            }
        }
        (out, den)
    }

    /// Whether two log-pole differentials are the same rational expression
    /// after expansion, comparing by cross multiplication. Both must use
    /// the same functions for shared registry indices.
    pub fn same_expression(&self, other: &LogPoleJetDiff) -> bool {
        for (i, f) in &self.registry {
            if other.registry.get(i).is_some_and(|g| g != f) {
                return false;
            }
        }
        let (a, da) = self.expand();
        let (b, db) = other.expand();
        let lookup = |i: &u32| self.registry.get(i).or_else(|| other.registry.get(i)).expect("registered");
        let cross = |p: DiffPoly, den: &BTreeMap<u32, u32>| {
            den.iter().fold(p, |acc, (i, e)| &acc * &lookup(i).pow(*e))
        };
        cross(a, &db) == cross(b, &da)
    }

    /// Text form: `key: value` lines for the dimension, jet order, body,
    /// registry entries `F{i}` and the denominator.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "n: {}", self.n);
        let _ = writeln!(s, "k: {}", self.k);
        let _ = writeln!(s, "body: {}", self.body);
        for (i, f) in &self.registry {
            let _ = writeln!(s, "F{i}: {f}");
        }
        let den: Vec<String> = self.denominator.iter().map(|(i, e)| format!("F{i}^{e}")).collect();
        let _ = writeln!(s, "denominator: {}", if den.is_empty() { "1".to_string() } else { den.join("*") });
        s
    }

    /// Parses [`LogPoleJetDiff::to_text`].
    pub fn from_text(text: &str) -> Result<LogPoleJetDiff> {
        let mut n = None;
        let mut body = None;
        let mut registry = BTreeMap::new();
        let mut denominator = BTreeMap::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let (key, value) = line
                .split_once(':')
                .ok_or_else(|| LogPoleError::Format(format!("line `{line}` has no `key: value` form")))?;
            let (key, value) = (key.trim(), value.trim());
            let bad = || LogPoleError::Format(format!("malformed `{key}` line"));
            match key {
                "n" => n = Some(value.parse::<u32>().map_err(|_| bad())?),
                "k" => {}
                "body" => body = Some(parse_poly(value)?),
                "denominator" if value == "1" => {}
                "denominator" => {
                    for factor in value.split('*') {
                        let (i, e) = factor.trim().strip_prefix('F').and_then(|f| f.split_once('^')).ok_or_else(bad)?;
                        denominator.insert(i.parse().map_err(|_| bad())?, e.parse().map_err(|_| bad())?);
                    }
                }
                _ => {
                    let i = key.strip_prefix('F').and_then(|i| i.parse::<u32>().ok()).ok_or_else(bad)?;
                    registry.insert(i, parse_poly(value)?);
                }
            }
        }
        let n = n.ok_or_else(|| LogPoleError::Format("missing `n`".into()))?;
        let body = body.ok_or_else(|| LogPoleError::Format("missing `body`".into()))?;
        LogPoleJetDiff::new(body, registry, denominator, n)
    }
}

/// Per registered function, the multiple of its divisor bounding the log
/// poles: the denominator exponent plus the largest `Σ ν·ℓ` over the
/// monomials of the body.
pub fn logpole_divisor_bound(omega: &LogPoleJetDiff) -> BTreeMap<u32, u32> {
    let mut out = omega.log_contributions();
    for (i, e) in &omega.denominator {
        *out.entry(*i).or_default() += e;
    }
    out
}
