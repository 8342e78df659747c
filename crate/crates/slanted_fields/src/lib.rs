//! Slanted vector fields on the vertical jet space of the universal
//! hypersurface `f = Σ α_ν z^ν`.
//!
//! Fields act on polynomials in `(α, z, ξ)` where `ξ^(ℓ)_j = d^ℓ log z_j`
//! and all these symbols are independent coordinates. Coefficients are
//! rational functions with factored denominators ([`RationalCoeff`]).

pub mod error;
pub mod field;
pub mod lie;
pub mod rational;
pub mod tangent;
pub mod theta;
pub mod vertical;

pub use error::{Result, SlantedError};
pub use field::{ClearedField, ParamVectorField};
pub use lie::{lie_derivative, order_ledger_after_lie, OrderLedger};
pub use rational::RationalCoeff;
pub use tangent::{lift_linear_field, tangent_field_pair};
pub use theta::{cleared_theta, theta_psi, theta_simple, theta_tilde, BinaryTreeSpec, ThetaPsi, ThetaPsiBuilder};
pub use vertical::{bookkeeping, bookkeeping_bounds, vertical_generator, BasisTangent, FieldBookkeeping};
