//! Constant rank-distance sets of hermitian matrices over F_{q²}.
//!
//! A set `U ⊂ H_n(F_{q²})` has constant rank-distance `k` when every nonzero
//! member and every difference of two distinct members has rank `k`. For
//! `k = n` these are partial spread sets of the hermitian polar space
//! H(2n−1, q²).
//!
//! The crate covers exact arithmetic in F_q ⊂ F_{q²} ([`field`]), hermitian
//! matrices and their enumeration ([`hermitian`]), the eigenvalues of the
//! hermitian forms scheme together with Delsarte bounds ([`scheme`]),
//! explicit constructions ([`constructions`]), and verification and
//! exhaustive search ([`search`]).
//!
//! ```
//! use std::sync::Arc;
//! use hermrank::{constructions, search, FieldSpec, DEFAULT_ENUMERATION_BUDGET};
//!
//! let f = Arc::new(FieldSpec::from_q(2).unwrap());
//! let params = constructions::UdeltaParams::with_delta(&f, 2).unwrap();
//! let u = constructions::construct_udelta(f, &params).unwrap();
//! assert_eq!(u.len(), 5);
//! assert!(search::is_constant_rank_distance(&u, 2).holds());
//! assert!(search::is_maximal(&u, DEFAULT_ENUMERATION_BUDGET).unwrap());
//! ```

pub mod constructions;
pub mod error;
pub mod ext;
pub mod field;
pub mod geometry;
pub mod hermitian;
pub mod matrix;
pub mod scheme;
pub mod search;
pub mod setfile;

pub use error::{Error, Result};
pub use field::{prime_power, FElem, FieldSpec};
pub use geometry::PGSubspace;
pub use hermitian::{
    translate_to_origin, HermMatrix, HermitianSpace, RankSet, DEFAULT_ENUMERATION_BUDGET,
};
pub use matrix::Matrix;
pub use scheme::{BoundReport, EigenTable, InnerDistribution};
pub use search::{SearchBudget, SpectrumResult};
