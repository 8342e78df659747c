//! Value distribution of rational curves: counting and characteristic
//! functions with certified root moduli and adaptive quadrature, the
//! comparison between the characteristic of a curve and those of its
//! affine coordinates, and exact evaluation of jet differentials along
//! curves.

pub mod curve;
pub mod error;
pub mod functions;
pub mod pullback;
pub mod quadrature;
pub mod roots;

pub use curve::{
    characteristic_map, compare_characteristics, first_main_theorem_gap, random_rational_curve, ComparisonReport,
    FirstMainTheoremReport, RationalCurve,
};
pub use error::{NevanlinnaError, Result};
pub use functions::{characteristic, counting_function, proximity_integral, Normalization, RationalFunction, Target};
pub use pullback::{eval_logpole, eval_pullback_function};
pub use quadrature::{integrate, Estimate};
pub use roots::{isolate_roots, RootSet};
