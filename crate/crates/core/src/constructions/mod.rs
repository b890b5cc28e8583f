//! The concrete groups, modules and bases of the natural simple module.
//!
//! Points are 0-based; blocks of the binary expansion of `n` are realized by
//! offsets. Vectors are rows in `γ`-coordinates unless stated otherwise.

mod fixtures;
mod modules;
mod profile;
mod special;
mod sylow;

pub use fixtures::{dump_fixtures, parse_perm_list, Fixture};
pub use modules::{natural_modules, DistinguishedVectors, NaturalKind, NaturalModules};
pub use profile::{two_adic_profile, CaseTag, TwoAdicProfile};
pub use special::{
    split_summand_bases, sym_endomorphism_basis, endo_case_subgroups, degree_six_data, top_quotient_image, EndoCaseSubgroups, DegreeSixData,
};
pub use sylow::{
    block_cycle, block_generator, embedded_alt, embedded_sym, named_subgroups, sylow_alt, sylow_alt_group, sylow_sym,
    sylow_sym_group, NamedSubgroups,
};
