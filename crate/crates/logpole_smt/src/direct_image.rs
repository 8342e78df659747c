//! Direct images of jet differentials from the branched cover
//! `x_{n+1}^δ = f` down to `ℙ_n`, with `d^j log x_{n+1}` replaced by
//! `d^j log f`.

use std::collections::BTreeMap;

use core_poly::{DiffPoly, Monomial, Var};

use crate::error::{LogPoleError, Result};
use crate::logdiff::LogPoleJetDiff;
use crate::wronskian::dx_in_dlog;

/// Registry index of `f` in a direct image.
pub const F_INDEX: u32 = 1;

fn check_alphabet(f: &DiffPoly, qhat: &DiffPoly, n: u32) -> Result<()> {
    if f.total_degree() == 0 {
        return Err(LogPoleError::DegenerateInput(format!("{f} is constant")));
    }
    for v in f.variables() {
        if !matches!(v, Var::X { order: 0, index } if (1..=n).contains(&index)) {
            return Err(LogPoleError::AlphabetMismatch(format!("{v} in f")));
        }
    }
    for v in qhat.variables() {
        let ok = match v {
            Var::X { index, .. } => (1..=n + 1).contains(&index),
            Var::LogX { index, .. } => index == n + 1,
            _ => false,
        };
        if !ok {
            return Err(LogPoleError::AlphabetMismatch(format!("{v} in the cover differential")));
        }
    }
    Ok(())
}

/// Rewrites every `d^j x_{n+1}` (`j ≥ 1`) as
/// `x_{n+1}·B_j(d log x_{n+1}, …, d^j log x_{n+1})`.
pub fn rewrite_cover_differentials(qhat: &DiffPoly, n: u32) -> DiffPoly {
    let cover = n + 1;
    qhat.substitute_with(&|v: &Var| match v {
        Var::X { order, index } if *index == cover && *order > 0 => Some(dx_in_dlog(*order, cover)),
        _ => None,
    })
}

/// The direct image of `Q̂/x_{n+1}^ℓ`: rewrite the `x_{n+1}`-differentials
/// logarithmically, set `x_{n+1} = 0` and substitute `d^j log x_{n+1} ↦
/// Λ^(j)_f`. The result lives on `ℙ_n` with registry `{1: f}`.
pub fn direct_image_logpole(f: &DiffPoly, qhat: &DiffPoly, ell: u32, n: u32) -> Result<LogPoleJetDiff> {
    check_alphabet(f, qhat, n)?;
    let cover = Var::x(n + 1);
    let mut body = DiffPoly::zero();
    for (m, c) in rewrite_cover_differentials(qhat, n).terms() {
        let (e, rest) = m.strip(&cover);
        if e < ell {
            return Err(LogPoleError::PoleAlongDivisor { ell, exponent: e });
        }
        if e > ell {
            continue;
        }
        let renamed = Monomial::from_pairs(rest.factors().iter().map(|(v, k)| match v {
            Var::LogX { order, .. } => (Var::log_f(F_INDEX, *order), *k),
            other => (other.clone(), *k),
        }));
        body.add_term(renamed, c.clone());
    }
    if body.is_zero() {
        return Err(LogPoleError::VanishingImage);
    }
    LogPoleJetDiff::new(body, BTreeMap::from([(F_INDEX, f.clone())]), BTreeMap::new(), n)
}

/// The smallest `ℓ` in `1..=max_ell` with a nonvanishing direct image, or
/// `None` when every admissible `ℓ` vanishes or leaves a pole.
pub fn search_direct_image(f: &DiffPoly, qhat: &DiffPoly, n: u32, max_ell: u32) -> Result<Option<(u32, LogPoleJetDiff)>> {
    for ell in 1..=max_ell {
        match direct_image_logpole(f, qhat, ell, n) {
            Ok(omega) => return Ok(Some((ell, omega))),
            Err(LogPoleError::VanishingImage) => {}
            Err(LogPoleError::PoleAlongDivisor { .. }) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    Ok(None)
}
