//! Direct-sum decompositions and simplicity tests.
//!
//! Splitting idempotents come from the Fitting decomposition of sampled
//! endomorphisms; locality is certified by exhaustive enumeration when the
//! endomorphism algebra is small and by an explicit nilpotent radical
//! otherwise.

mod decompose;
mod locality;
mod simple;

pub use locality::{
    crt_idempotent, is_indecomposable, is_indecomposable_with, is_nontrivial_idempotent, locality_of,
    nilpotent_radical, LocalityCertificate, Radical, Verdict, DEFAULT_ENUMERATION_LIMIT,
};
pub use decompose::{decompose, DecompOptions, DecompositionResult};
pub use simple::{composition_factor_dims, is_simple, simplicity, Simplicity};
