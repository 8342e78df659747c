//! Log-pole jet differentials: Wronskians, the Cartan form for hyperplanes
//! in general position, and direct images from the branched cover
//! `x_{n+1}^δ = f` with the log-pole divisor bookkeeping.

pub mod cartan;
pub mod direct_image;
pub mod error;
pub mod logdiff;
pub mod wronskian;

pub use cartan::{
    cartan_form, cartan_log_form, in_general_position, independent_subset, literal_rewrite_holds, random_general_position,
    verify_cartan_rewrite, wronskian_constant,
};
pub use direct_image::{direct_image_logpole, rewrite_cover_differentials, search_direct_image};
pub use error::{LogPoleError, Result};
pub use logdiff::{logpole_divisor_bound, LogPoleJetDiff};
pub use wronskian::{complete_bell, determinant, dlog_numerator, dx_in_dlog, verify_dlog_rewrite, wronskian};
