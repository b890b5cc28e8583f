//! Dense linear algebra over GF(2^k) on bit-packed rows.
//!
//! Vectors are rows and matrices act on the right: the image of `v` under
//! `a` is `v * a`.

mod matrix;
mod poly;
mod subspace;

pub use matrix::{Matrix, Rref};
pub use poly::{factor_poly, min_poly, Poly};
pub use subspace::{left_kernel, right_kernel, spin, Echelon, SpanSolver, Subspace};

/// The left kernel `{v : v * a = 0}`.
pub fn kernel(a: &Matrix) -> Subspace {
    left_kernel(a)
}
