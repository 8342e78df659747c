//! Jet alphabet: coordinates, their higher differentials, logarithmic
//! differentials, coefficient symbols and symbolic multi-index components.
//!
//! The derived ordering is the canonical variable ordering: variables are
//! grouped by family, and inside a family ordered by `(order, index)`, so the
//! base coordinates (order 0) come first by index, followed by the
//! differentials.

use std::fmt;

use crate::multi_index::MultiIndex;

/// Which coordinate alphabet a base coordinate belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Family {
    /// Homogeneous coordinates `z_0, …, z_n`.
    Homogeneous,
    /// Inhomogeneous coordinates `x_1, …, x_n`.
    Inhomogeneous,
}

/// One variable of a differential polynomial.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Var {
    /// `d^order z_index`; order 0 is the homogeneous coordinate itself.
    Z { order: u32, index: u32 },
    /// `d^order x_index`; order 0 is the inhomogeneous coordinate itself.
    X { order: u32, index: u32 },
    /// `ξ^(order)_index = d^order log z_index`, order ≥ 1.
    Xi { order: u32, index: u32 },
    /// `d^order log x_index`, order ≥ 1.
    LogX { order: u32, index: u32 },
    /// `Λ^(order)_index = d^order log F_index` for a registered function `F_index`.
    LogF { order: u32, index: u32 },
    /// Coefficient symbol `α_ν` of the universal hypersurface.
    Alpha(MultiIndex),
    /// Symbolic multi-index component `ν_index`.
    Nu(u32),
}

impl Var {
    /// Homogeneous coordinate `z_j`.
    pub fn z(j: u32) -> Var {
        Var::Z { order: 0, index: j }
    }
    /// Differential `d^l z_j`.
    pub fn dz(l: u32, j: u32) -> Var {
        Var::Z { order: l, index: j }
    }
    /// Inhomogeneous coordinate `x_j`.
    pub fn x(j: u32) -> Var {
        Var::X { order: 0, index: j }
    }
    /// Differential `d^l x_j`.
    pub fn dx(l: u32, j: u32) -> Var {
        Var::X { order: l, index: j }
    }
    /// `ξ^(l)_j`.
    pub fn xi(l: u32, j: u32) -> Var {
        Var::Xi { order: l, index: j }
    }
    /// `d^l log x_j`.
    pub fn log_x(l: u32, j: u32) -> Var {
        Var::LogX { order: l, index: j }
    }
    /// `Λ^(l)_i`.
    pub fn log_f(i: u32, l: u32) -> Var {
        Var::LogF { order: l, index: i }
    }
    /// `α_ν`.
    pub fn alpha(nu: MultiIndex) -> Var {
        Var::Alpha(nu)
    }
    /// `ν_j`.
    pub fn nu(j: u32) -> Var {
        Var::Nu(j)
    }

    /// Differential order; zero for base coordinates and constants.
    pub fn order(&self) -> u32 {
        match self {
            Var::Z { order, .. }
            | Var::X { order, .. }
            | Var::Xi { order, .. }
            | Var::LogX { order, .. }
            | Var::LogF { order, .. } => *order,
            Var::Alpha(_) | Var::Nu(_) => 0,
        }
    }

    /// Grading weight: the differential order.
    pub fn weight(&self) -> u32 {
        self.order()
    }

    /// True for `z_j` and `x_j` (order 0 coordinates).
    pub fn is_base(&self) -> bool {
        matches!(self, Var::Z { order: 0, .. } | Var::X { order: 0, .. })
    }

    /// True for variables of positive order.
    pub fn is_differential(&self) -> bool {
        self.order() > 0
    }

    /// True for variables that the total derivative treats as constants.
    pub fn is_constant_symbol(&self) -> bool {
        matches!(self, Var::Alpha(_) | Var::Nu(_))
    }

    /// Coordinate family of `Z`/`X` variables.
    pub fn family(&self) -> Option<Family> {
        match self {
            Var::Z { .. } => Some(Family::Homogeneous),
            Var::X { .. } => Some(Family::Inhomogeneous),
            _ => None,
        }
    }

    /// Coordinate or registry index, when the variable has one.
    pub fn index(&self) -> Option<u32> {
        match self {
            Var::Z { index, .. }
            | Var::X { index, .. }
            | Var::Xi { index, .. }
            | Var::LogX { index, .. }
            | Var::LogF { index, .. } => Some(*index),
            Var::Nu(j) => Some(*j),
            Var::Alpha(_) => None,
        }
    }

    /// The same variable with its order raised by one, or `None` for
    /// constant symbols.
    pub fn successor(&self) -> Option<Var> {
        self.with_order(self.order() + 1)
    }

    /// The same coordinate at another differential order.
    pub fn with_order(&self, l: u32) -> Option<Var> {
        match self {
            Var::Z { index, .. } => Some(Var::Z { order: l, index: *index }),
            Var::X { index, .. } => Some(Var::X { order: l, index: *index }),
            Var::Xi { index, .. } => Some(Var::Xi { order: l, index: *index }),
            Var::LogX { index, .. } => Some(Var::LogX { order: l, index: *index }),
            Var::LogF { index, .. } => Some(Var::LogF { order: l, index: *index }),
            Var::Alpha(_) | Var::Nu(_) => None,
        }
    }
}

fn coordinate_token(f: &mut fmt::Formatter<'_>, letter: &str, order: u32, index: u32) -> fmt::Result {
    match order {
        0 => write!(f, "{letter}{index}"),
        1 => write!(f, "d{letter}{index}"),
        l => write!(f, "d{l}{letter}{index}"),
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Z { order, index } => coordinate_token(f, "z", *order, *index),
            Var::X { order, index } => coordinate_token(f, "x", *order, *index),
            Var::Xi { order, index } => write!(f, "xi{order}_{index}"),
            Var::LogX { order, index } => write!(f, "lx{order}_{index}"),
            Var::LogF { order, index } => write!(f, "L{index}_{order}"),
            Var::Alpha(nu) => write!(f, "a{nu}"),
            Var::Nu(j) => write!(f, "nu{j}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_puts_base_first() {
        let mut vars = vec![Var::dx(2, 1), Var::dx(1, 2), Var::x(2), Var::dx(1, 1), Var::x(1)];
        vars.sort();
        assert_eq!(vars, vec![Var::x(1), Var::x(2), Var::dx(1, 1), Var::dx(1, 2), Var::dx(2, 1)]);
    }

    #[test]
    fn tokens() {
        assert_eq!(Var::x(3).to_string(), "x3");
        assert_eq!(Var::dx(1, 1).to_string(), "dx1");
        assert_eq!(Var::dx(2, 1).to_string(), "d2x1");
        assert_eq!(Var::xi(2, 1).to_string(), "xi2_1");
        assert_eq!(Var::log_f(1, 2).to_string(), "L1_2");
        assert_eq!(Var::alpha(MultiIndex::new([2, 0])).to_string(), "a[2,0]");
    }

    #[test]
    fn successors() {
        assert_eq!(Var::x(1).successor(), Some(Var::dx(1, 1)));
        assert_eq!(Var::xi(1, 0).successor(), Some(Var::xi(2, 0)));
        assert_eq!(Var::nu(0).successor(), None);
    }
}
