//! Computational modular representation theory in characteristic 2.
//!
//! The crate builds the Sylow 2-subgroups of symmetric and alternating
//! groups, the natural permutation module and its simple composition factor,
//! and certifies vertices and sources of that simple module by combining
//! indecomposable decompositions, Higman's criterion and maximal-subgroup
//! descent.

pub mod error;
pub mod field;

pub use error::{Error, Result};
pub use field::{Elem, Field};
pub mod linalg;
pub mod perm;
pub mod constructions;
pub mod gmod;
pub mod decomp;
pub mod vertex;
pub mod verify;
