//! Exact substrate for jet-differential computations.
//!
//! Scalars are arbitrary-precision rationals. A [`DiffPoly`] is a sparse
//! polynomial over a jet alphabet ([`Var`]) made of coordinates, their
//! higher differentials, logarithmic differentials, coefficient symbols
//! `α_ν` and symbolic multi-index components `ν_j`. The crate provides the
//! total derivative, weight and degree gradings, conversion between the
//! homogeneous and inhomogeneous alphabets, a text format, dense univariate
//! polynomials and exact evaluation along curve germs.

pub mod error;
pub mod grading;
pub mod jet_eval;
pub mod monomial;
pub mod multi_index;
pub mod poly;
pub mod scalar;
pub mod text;
pub mod univariate;
pub mod var;

pub use error::{PolyError, Result};
pub use grading::{degree_in_base, dehomogenize, homogenize_jet, weight};
pub use jet_eval::{evaluate_at_jet, JetGerm};
pub use monomial::{Monomial, MonomialOrder};
pub use multi_index::{binomial, binomial_big, MultiIndex};
pub use poly::DiffPoly;
pub use scalar::Scalar;
pub use text::{parse_poly, parse_var};
pub use univariate::UniPoly;
pub use var::{Family, Var};
