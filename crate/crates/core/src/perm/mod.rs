//! Permutations and permutation groups.
//!
//! Points are 0-based internally and 1-based in every text form. Products
//! compose left to right, so `i^(g*h) = (i^g)^h`.

mod chain;
mod conjugacy;
mod coset;
mod group;
mod maximal;
mod permutation;

pub use chain::{Level, Sifted, Slp, SlpNode, StabChain};
pub use conjugacy::{conjugacy_witness, ConjugacyMode, ConjugacyOutcome};
pub use coset::{canonical_coset_key, right_transversal};
pub use group::{two_adic_valuation_factorial, PermGroup};
pub use maximal::{
    annihilating_functionals, maximal_subgroups_containing, maximal_subgroups_in_quotient, FrattiniQuotient,
};
pub use permutation::{Perm, MAX_DEGREE};
