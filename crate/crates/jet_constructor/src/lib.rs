//! Construction and verification of global jet differentials on smooth
//! projective hypersurfaces that vanish on the hyperplane at infinity.
//!
//! The pipeline eliminates the `x_1`-differentials with the derivatives of
//! `f`, assembles an exact sparse linear system for the coefficients of the
//! numerator `Q`, solves it over `ℚ`, and checks every solution
//! independently by Gröbner division and by evaluation on sampled jets.

pub mod certificate;
pub mod counting;
pub mod elimination;
pub mod error;
pub mod germ;
pub mod linalg;
pub mod system;

pub use certificate::{
    all_pass, construct_certificate, search_smallest, solution_basis, verify_certificate, vanishing_order_at_infinity,
    CertificateOptions, CheckEntry, JetCertificate, SearchHit,
};
pub use counting::{dim_sections_on_s, feasibility_check, monomial_count_bounds, DimensionCount, Feasibility};
pub use elimination::{affine_part, eliminate_dx1, fermat, kappa_recursion, EliminationRow, EliminationTable};
pub use error::{JetError, Result};
pub use germ::{sample_jet, vanishing_order_at_point, JetSample};
pub use system::{assemble_system, solve_nullspace, AssemblyOptions, Column, SparseLinearSystem};
