//! Dense univariate polynomials over the rationals.

use std::fmt;

use num::{One, Signed, Zero};

use crate::scalar::{int, Scalar};

/// A dense polynomial `Σ c_i t^i`, coefficients in ascending degree with no
/// trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UniPoly {
    coeffs: Vec<Scalar>,
}

impl UniPoly {
    /// Builds from ascending coefficients.
    pub fn new(coeffs: Vec<Scalar>) -> UniPoly {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    /// Builds from small integer coefficients in ascending order.
    pub fn from_ints(coeffs: &[i64]) -> UniPoly {
        UniPoly::new(coeffs.iter().map(|c| int(*c)).collect())
    }

    /// The zero polynomial.
    pub fn zero() -> UniPoly {
        UniPoly { coeffs: Vec::new() }
    }

    /// A constant.
    pub fn constant(c: Scalar) -> UniPoly {
        UniPoly::new(vec![c])
    }

    /// The variable `t`.
    pub fn t() -> UniPoly {
        UniPoly::new(vec![Scalar::zero(), Scalar::one()])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// True for zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Ascending coefficients.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `t^i`.
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(Scalar::zero)
    }

    /// Sum.
    pub fn add(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    /// Difference.
    pub fn sub(&self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    /// Product.
    pub fn mul(&self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Product truncated to degree `< len`.
    pub fn mul_trunc(&self, o: &UniPoly, len: usize) -> UniPoly {
        let mut out = vec![Scalar::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }

    /// Truncation to degree `< len`.
    pub fn truncate(&self, len: usize) -> UniPoly {
        UniPoly::new(self.coeffs.iter().take(len).cloned().collect())
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, c: &Scalar) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// `self^e`.
    pub fn pow(&self, e: u32) -> UniPoly {
        let mut r = UniPoly::constant(Scalar::one());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Formal derivative.
    pub fn derivative(&self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * int(i as i64)).collect())
    }

    /// `k`-th formal derivative.
    pub fn derivative_n(&self, k: u32) -> UniPoly {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        p
    }

    /// Exact evaluation (Horner).
    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Composition `self(q(t))`.
    pub fn compose(&self, q: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(q).add(&UniPoly::constant(c.clone()));
        }
        acc
    }

    /// Taylor shift: the polynomial `t ↦ self(a + t)`.
    pub fn shift(&self, a: &Scalar) -> UniPoly {
        self.compose(&UniPoly::new(vec![a.clone(), Scalar::one()]))
    }

    /// Euclidean division: `(q, r)` with `self = q·d + r`, `deg r < deg d`.
    ///
    /// # Panics
    /// Panics when `d` is zero.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lc = d.leading();
        let mut r = self.coeffs.clone();
        let mut q = vec![Scalar::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let c = &r[top] / &lc;
            if !c.is_zero() {
                for (i, b) in d.coeffs.iter().enumerate() {
                    r[top - dd + i] -= &c * b;
                }
                q[top - dd] = c;
            }
            r.pop();
        }
        (UniPoly::new(q), UniPoly::new(r))
    }

    /// Remainder modulo `d`.
    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Monic associate (zero stays zero).
    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let lc = self.leading();
        self.scale(&(Scalar::one() / lc))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: `(g, s, t)` with `s·self + t·o = g`, `g` monic.
    pub fn ext_gcd(&self, o: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UniPoly::constant(Scalar::one()), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::constant(Scalar::one()));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = Scalar::one() / r0.leading();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// True when the polynomial has no repeated factor.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Square-free decomposition (Yun): monic factors `a_i` such that
    /// `self = lc·Π a_i^i`, returned as `(i, a_i)` for nonconstant `a_i`.
    pub fn squarefree_decomposition(&self) -> Vec<(u32, UniPoly)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let nb = b.div_rem(&a).0;
            c = d.div_rem(&a).0;
            if a.degree().unwrap_or(0) > 0 {
                out.push((i, a));
            }
            b = nb;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Coefficients as `f64`.
    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(crate::scalar::to_f64).collect()
    }

    /// Largest absolute coefficient value.
    pub fn max_abs_coeff(&self) -> Scalar {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_else(Scalar::zero)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", crate::scalar::to_text(c))?,
                1 => write!(f, "{}*t", crate::scalar::to_text(c))?,
                _ => write!(f, "{}*t^{i}", crate::scalar::to_text(c))?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let a = UniPoly::from_ints(&[1, 2, 3, 4, 5]);
        let b = UniPoly::from_ints(&[-1, 0, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn extended_gcd() {
        let a = UniPoly::from_ints(&[-1, 0, 1]);
        let b = UniPoly::from_ints(&[1, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, UniPoly::from_ints(&[1, 1]));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn yun_decomposition() {
        let x1 = UniPoly::from_ints(&[-1, 1]);
        let x2 = UniPoly::from_ints(&[-2, 1]);
        let p = x1.pow(3).mul(&x2).scale(&int(4));
        let dec = p.squarefree_decomposition();
        assert_eq!(dec, vec![(1, x2), (3, x1)]);
        assert!(!p.is_squarefree());
    }

    #[test]
    fn shift_and_eval() {
        let p = UniPoly::from_ints(&[0, 0, 1]);
        let s = p.shift(&int(3));
        assert_eq!(s, UniPoly::from_ints(&[9, 6, 1]));
        assert_eq!(p.eval(&int(3)), int(9));
    }
}
