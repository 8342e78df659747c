//! Exact rational scalars.
//!
//! Scalars are arbitrary-precision rationals kept in lowest terms with a
//! positive denominator; zero is `0/1`.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{PolyError, Result};

/// Exact rational number in lowest terms.
pub type Scalar = BigRational;

/// Builds the scalar `i/1`.
pub fn int(i: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(i))
}

/// Builds the scalar `p/q` in lowest terms.
///
/// # Panics
/// Panics when `q == 0`.
pub fn frac(p: i64, q: i64) -> Scalar {
    assert!(q != 0, "zero denominator");
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Builds an integer scalar from a big integer.
pub fn from_bigint(i: BigInt) -> Scalar {
    Scalar::from_integer(i)
}

/// `n!` as a scalar.
pub fn factorial(n: u32) -> Scalar {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    Scalar::from_integer(acc)
}

/// Canonical text form used by the text polynomial format: `p` for integers
/// and `p/q` otherwise.
pub fn to_text(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Canonical serialization form: always `p/q`, with `q ≥ 1`.
pub fn to_fraction_string(s: &Scalar) -> String {
    format!("{}/{}", s.numer(), s.denom())
}

/// Parses `p`, `-p` or `p/q` (no decimal point, no exponent).
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = |msg: &str| PolyError::Parse { pos: 0, msg: format!("{msg}: `{t}`") };
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let p: BigInt = num.parse().map_err(|_| bad("invalid integer numerator"))?;
    let q: BigInt = den.parse().map_err(|_| bad("invalid integer denominator"))?;
    if q.is_zero() {
        return Err(bad("zero denominator"));
    }
    Ok(Scalar::new(p, q))
}

/// Nearest `f64` approximation of a scalar.
pub fn to_f64(s: &Scalar) -> f64 {
    use num::ToPrimitive;
    match s.to_f64() {
        Some(v) if v.is_finite() => v,
        _ => {
            // Ratio of huge integers: scale both by a power of two first.
            let n_bits = s.numer().bits() as i64;
            let d_bits = s.denom().bits() as i64;
            let shift_n = (n_bits - 60).max(0) as usize;
            let shift_d = (d_bits - 60).max(0) as usize;
            let n = (s.numer().abs() >> shift_n).to_f64().unwrap_or(f64::MAX);
            let d = (s.denom() >> shift_d).to_f64().unwrap_or(f64::MAX);
            let sign = if s.is_negative() { -1.0 } else { 1.0 };
            sign * (n / d) * 2f64.powi((shift_n as i64 - shift_d as i64) as i32)
        }
    }
}

/// Exact rational value of a finite `f64`.
pub fn from_f64(x: f64) -> Option<Scalar> {
    Scalar::from_float(x)
}
