//! Multi-indices: fixed-length tuples of nonnegative exponents.

use std::fmt;

use smallvec::SmallVec;

/// A tuple `(ν_0, …, ν_n)` of nonnegative integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct MultiIndex(SmallVec<[u32; 6]>);

impl MultiIndex {
    /// Builds a multi-index from its components.
    pub fn new(components: impl IntoIterator<Item = u32>) -> Self {
        MultiIndex(components.into_iter().collect())
    }

    /// The all-zero multi-index of the given length.
    pub fn zeros(len: usize) -> Self {
        MultiIndex(SmallVec::from_elem(0, len))
    }

    /// The unit multi-index `e_p` of the given length.
    ///
    /// # Panics
    /// Panics when `p >= len`.
    pub fn unit(len: usize, p: usize) -> Self {
        assert!(p < len, "unit index {p} out of range for length {len}");
        let mut m = Self::zeros(len);
        m.0[p] = 1;
        m
    }

    /// Number of components.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True when there are no components.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Total degree `|ν|`.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Component slice.
    pub fn components(&self) -> &[u32] {
        &self.0
    }

    /// Component `i`.
    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// Componentwise sum.
    ///
    /// # Panics
    /// Panics when lengths differ.
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.len(), other.len(), "multi-index length mismatch");
        MultiIndex(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, or `None` when some component would be negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if self.len() != other.len() {
            return None;
        }
        let mut out = SmallVec::with_capacity(self.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            out.push(a.checked_sub(*b)?);
        }
        Some(MultiIndex(out))
    }

    /// `ν + e_p`.
    pub fn add_unit(&self, p: usize) -> MultiIndex {
        let mut m = self.clone();
        m.0[p] += 1;
        m
    }

    /// `ν − e_p`, or `None` when `ν_p = 0`.
    pub fn sub_unit(&self, p: usize) -> Option<MultiIndex> {
        if self.0[p] == 0 {
            return None;
        }
        let mut m = self.clone();
        m.0[p] -= 1;
        Some(m)
    }

    /// True when every component of `self` is at most the matching component of `other`.
    pub fn le_componentwise(&self, other: &MultiIndex) -> bool {
        self.len() == other.len() && self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// All multi-indices of length `len` and total degree `degree`, in
    /// lexicographically decreasing order of components.
    pub fn all_of_degree(len: usize, degree: u32) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        if len == 0 {
            if degree == 0 {
                out.push(MultiIndex::zeros(0));
            }
            return out;
        }
        let mut current = vec![0u32; len];
        fill(&mut current, 0, degree, &mut out);
        out
    }

    /// All multi-indices of length `len` and total degree at most `degree`,
    /// ordered by degree and then as in [`MultiIndex::all_of_degree`].
    pub fn all_up_to_degree(len: usize, degree: u32) -> Vec<MultiIndex> {
        (0..=degree).flat_map(|d| Self::all_of_degree(len, d)).collect()
    }
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<MultiIndex>) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(MultiIndex::new(current.iter().copied()));
        return;
    }
    for v in (0..=remaining).rev() {
        current[pos] = v;
        fill(current, pos + 1, remaining - v, out);
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Binomial coefficient `C(n, k)` as a big integer (zero when `k > n`).
pub fn binomial(n: u64, k: u64) -> num::BigInt {
    binomial_big(&num::BigInt::from(n), k)
}

/// Binomial coefficient `C(n, k)` for a big-integer top argument.
pub fn binomial_big(n: &num::BigInt, k: u64) -> num::BigInt {
    use num::{One, Signed, Zero};
    if n.is_negative() || *n < num::BigInt::from(k) {
        return num::BigInt::zero();
    }
    let mut acc = num::BigInt::one();
    for i in 0..k {
        acc = acc * (n - num::BigInt::from(i)) / num::BigInt::from(i + 1);
    }
    acc
}
