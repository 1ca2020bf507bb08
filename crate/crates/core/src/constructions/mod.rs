//! Explicit constant rank-distance sets.

mod lift;
mod semifield;
mod udelta;

pub use lift::{
    desarguesian_spread, lift_partial_spread, pg_point_spread, spread_gram_matrices,
    ProjectivePartialSpread,
};
pub use semifield::{extend_to_hermitian, trace_gram_spread_set};
pub use udelta::{construct_udelta, mu_is_admissible, select_mu, UdeltaParams};
