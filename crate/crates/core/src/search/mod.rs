//! Verification, maximality, greedy completion, and spectrum search.

mod clique;
mod extend;
mod spectrum;
mod verify;

pub use clique::{maximal_clique_spectrum, BitSet, CliqueSpectrum, Graph};
pub use extend::{extension_candidates, greedy_complete, is_maximal, CompletionOrder};
pub use spectrum::{maximal_set_spectrum, RankGraph, SearchBudget, SpectrumResult};
pub use verify::{
    check_constant_rank_distance, is_additively_closed, is_constant_rank_distance,
    is_subfield_linear, Verification, Violation,
};
