//! Modules over group algebras of permutation groups.
//!
//! A module stores one matrix per group generator; the matrix of any other
//! element is obtained by factoring it through the group's stabilizer chain.

mod hom;
mod module;
mod pgroup;

pub use hom::{endo_algebra, hom_space, iso_test, EndoAlgebra, HomSpace, IsoOutcome};
pub use module::GModule;
pub use pgroup::{norm_operator, radical_pgroup, socle_pgroup, trivial_summand_test};
