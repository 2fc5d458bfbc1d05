//! Basis reduction and short-vector enumeration for definite lattices.

mod enumerate;
mod lll;

pub use enumerate::{
    count_roots, kissing_number, minimal_norm, minimal_norm_with, short_vectors, EnumOptions,
    Enumerator, ShortVectorReport,
};
pub use lll::{default_delta, is_lll_reduced, lll, lll_gram, IntegralGramSchmidt};
