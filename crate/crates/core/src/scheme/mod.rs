//! The hermitian forms association scheme: characters, eigenvalues, inner
//! distributions, and the bounds they imply.

pub mod bounds;
pub mod character;
pub mod distribution;
pub mod eigen;

pub use bounds::{bound_catalog, rank_at_most_two_bound, BoundEntry, BoundReport, BoundScope};
pub use character::{
    brute_eigen_table, char_value_p, chi, chi_formula, count_nh, count_nh_formula, nh_counts_brute,
    subgroup_character_multiplicity, CharacterSum, Mode,
};
pub use distribution::{delsarte_check, inner_distribution, DelsarteReport, InnerDistribution};
pub use eigen::{
    eigen_table, gaussian_binomial, p1_closed_form, pk_at_n_product, recurrence_coefficients,
    valency, EigenTable,
};
