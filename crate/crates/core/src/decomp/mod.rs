//! Decisions with replayable evidence: simplicity, composition series,
//! radicals, indecomposability and direct-sum decompositions.

mod cert;
mod indecomp;
mod series;
mod simple;

pub use cert::Certificate;
pub use indecomp::{
    find_idempotent, indecomposable_decomposition, is_indecomposable, is_indecomposable_with_radical,
    iso_indecomposable, lift_idempotent, DecompositionReport, Summand,
};
pub use series::{
    algebra_radical, composition_series, group_classes, iso_modules, iso_simple, radical_nilpotency_index,
    AlgebraRadical, CompSeries, IsoResult, DEFAULT_ISO_BUDGET,
};
pub use simple::{
    find_proper_submodule, is_simple, is_simple_with, CandidateStream, SimplicityMethod, SubmoduleSearch,
    DEFAULT_BUDGET, EXHAUSTIVE_LIMIT, NORTON_POINT_CAP,
};

/// Independent sub-seed for a nested computation (splitmix64 finalizer).
pub fn derive_seed(seed: u64, tag: u64) -> u64 {
    let mut z = seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub(crate) use indecomp::{decompose_with, local_checks};
pub(crate) use series::simples_isomorphic;
