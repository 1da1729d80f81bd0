//! Order complexes of poset intervals, reduced integral homology and
//! discrete Morse matchings.

mod complex;
mod morse;
mod snf;

pub use complex::{
    interval_homology, BoundaryMatrix, ChainComplex, Classification, HomologyGroup, HomologyResult,
    IntervalHomology, OrderComplex, SimplicialComplex, DEFAULT_CHAIN_BUDGET,
};
pub use morse::{
    morse_matching_case_one, morse_matching_collapse, morse_matching_suspend, MatchingKind,
    MorseMatching,
};
pub use snf::{smith_normal_form, sparse_invariant_factors};
