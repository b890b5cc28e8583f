use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::Matrix;
use crate::perm::Perm;

use super::profile::{two_adic_profile, TwoAdicProfile};
use super::sylow::block_cycle;

/// The three modules cut out of the natural permutation module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NaturalKind {
    /// `M`, with basis `γ_1, .., γ_n`.
    Permutation,
    /// `M'`, the augmentation submodule, with basis `γ_i + γ_n` for `i < n`.
    Augmentation,
    /// `D`: `M'/M''` for even `n` with basis the images of `γ_i + γ_n` for
    /// `i <= n-2`, and `M'` itself for odd `n`.
    Heart,
}

/// Coordinates and actions for `M`, `M'` and `D` on `n` points.
#[derive(Clone, Debug)]
pub struct NaturalModules {
    n: usize,
    field: Field,
    profile: TwoAdicProfile,
    delta: Vec<usize>,
}

/// The block half-sums and related vectors, as rows in `γ`-coordinates of `M`.
#[derive(Clone, Debug)]
pub struct DistinguishedVectors {
    /// `δ_{j'}^+`, the sum over the odd `δ`-positions of block `j`.
    pub first_half: Vec<Matrix>,
    /// `δ_{j''}^+`, the sum over the even `δ`-positions of block `j`.
    pub second_half: Vec<Matrix>,
    /// `δ_j^+`, the sum over block `j`.
    pub block: Vec<Matrix>,
    /// `δ_0^+ = Σ_j δ_{j''}^+`.
    pub zero: Matrix,
    /// `δ^+`, the sum of all basis vectors.
    pub total: Matrix,
}

impl DistinguishedVectors {
    /// Every vector with a 1-based label.
    pub fn labeled(&self) -> Vec<(String, Matrix)> {
        let mut out = Vec::new();
        for j in 0..self.block.len() {
            out.push((format!("delta_{}'+", j + 1), self.first_half[j].clone()));
            out.push((format!("delta_{}''+", j + 1), self.second_half[j].clone()));
            out.push((format!("delta_{}+", j + 1), self.block[j].clone()));
        }
        out.push(("delta_0+".into(), self.zero.clone()));
        out.push(("delta+".into(), self.total.clone()));
        out
    }
}

pub fn natural_modules(n: usize, field: Field) -> Result<NaturalModules> {
    if n < 3 {
        return Err(Error::Domain(format!("natural modules need degree >= 3, got {n}")));
    }
    let profile = two_adic_profile(n)?;
    let mut delta: Vec<usize> = (0..n).collect();
    for j in 0..profile.l() {
        let y = block_cycle(&profile, j);
        let start = profile.offsets()[j];
        let mut p = start;
        for t in 0..profile.parts()[j] {
            delta[start + t] = p;
            p = y.image(p);
        }
    }
    Ok(NaturalModules { n, field, profile, delta })
}

impl NaturalModules {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn profile(&self) -> &TwoAdicProfile {
        &self.profile
    }

    pub fn is_even(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    pub fn dim(&self, kind: NaturalKind) -> usize {
        match kind {
            NaturalKind::Permutation => self.n,
            NaturalKind::Augmentation => self.n - 1,
            NaturalKind::Heart if self.is_even() => self.n - 2,
            NaturalKind::Heart => self.n - 1,
        }
    }

    /// `delta_perm()[i]` is the `γ`-index of `δ_i` (both 0-based).
    pub fn delta_perm(&self) -> &[usize] {
        &self.delta
    }

    /// The matrix of `g` on the chosen basis of `kind`, acting on row vectors.
    pub fn action(&self, kind: NaturalKind, g: &Perm) -> Result<Matrix> {
        if g.degree() != self.n {
            return Err(Error::Domain(format!("permutation of degree {} on {} points", g.degree(), self.n)));
        }
        let n = self.n;
        let last = n - 1;
        let images: Vec<usize> = (0..n).map(|i| g.image(i)).collect();
        if kind == NaturalKind::Permutation {
            return Ok(Matrix::permutation(self.field, &images));
        }
        let d = self.dim(kind);
        let mut m = Matrix::zeros(self.field, d, d);
        let fold = kind == NaturalKind::Heart && self.is_even();
        let add = |row: usize, col: usize, m: &mut Matrix| {
            if col == last {
                return;
            }
            if fold && col == n - 2 {
                for c in 0..d {
                    let x = self.field.add(m.get(row, c), Elem::ONE);
                    m.set(row, c, x);
                }
            } else {
                let x = self.field.add(m.get(row, col), Elem::ONE);
                m.set(row, col, x);
            }
        };
        for (row, &a) in images.iter().enumerate().take(d) {
            // (γ_i + γ_n) g = γ_{i^g} + γ_{n^g}
            add(row, a, &mut m);
            add(row, images[last], &mut m);
        }
        Ok(m)
    }

    /// Rows `γ_i + γ_n` spanning `M'` inside `M`.
    pub fn augmentation_in_permutation(&self) -> Matrix {
        let n = self.n;
        Matrix::from_fn(self.field, n - 1, n, |i, j| if j == i || j == n - 1 { Elem::ONE } else { Elem::ZERO })
    }

    /// The all-ones row spanning `M''`.
    pub fn trivial_in_permutation(&self) -> Matrix {
        Matrix::from_fn(self.field, 1, self.n, |_, _| Elem::ONE)
    }

    /// Rows of `M` lifting the chosen basis of `D`.
    pub fn heart_lift(&self) -> Matrix {
        let d = self.dim(NaturalKind::Heart);
        self.augmentation_in_permutation().select_rows(&(0..d).collect::<Vec<_>>())
    }

    /// Whether the row `v` of `M` lies in `M'`.
    pub fn in_augmentation(&self, v: &Matrix, row: usize) -> bool {
        let f = self.field;
        (0..self.n).fold(Elem::ZERO, |acc, j| f.add(acc, v.get(row, j))).is_zero()
    }

    /// `M'`-coordinates of rows of `M` lying in `M'`.
    pub fn to_augmentation(&self, v: &Matrix) -> Result<Matrix> {
        for r in 0..v.rows() {
            if !self.in_augmentation(v, r) {
                return Err(Error::Domain("vector is not in the augmentation submodule".into()));
            }
        }
        Ok(v.select_cols(&(0..self.n - 1).collect::<Vec<_>>()))
    }

    /// `D`-coordinates of the images of rows of `M` lying in `M'`.
    pub fn to_heart(&self, v: &Matrix) -> Result<Matrix> {
        let a = self.to_augmentation(v)?;
        if !self.is_even() {
            return Ok(a);
        }
        let d = self.n - 2;
        let f = self.field;
        Ok(Matrix::from_fn(f, a.rows(), d, |r, c| f.add(a.get(r, c), a.get(r, d))))
    }

    /// A row of `M` in `γ`-coordinates from `δ`-indices, each counted once.
    pub fn delta_vector(&self, indices: impl IntoIterator<Item = usize>) -> Matrix {
        let f = self.field;
        let mut v = Matrix::zeros(f, 1, self.n);
        for i in indices {
            let g = self.delta[i];
            v.set(0, g, f.add(v.get(0, g), Elem::ONE));
        }
        v
    }

    pub fn distinguished(&self) -> DistinguishedVectors {
        let p = &self.profile;
        let mut first_half = Vec::new();
        let mut second_half = Vec::new();
        let mut block = Vec::new();
        let mut zero_idx = Vec::new();
        for j in 0..p.l() {
            let b = p.block(j);
            first_half.push(self.delta_vector(b.clone().step_by(2)));
            second_half.push(self.delta_vector(b.clone().skip(1).step_by(2)));
            block.push(self.delta_vector(b.clone()));
            zero_idx.extend(b.skip(1).step_by(2));
        }
        DistinguishedVectors {
            first_half,
            second_half,
            block,
            zero: self.delta_vector(zero_idx),
            total: self.delta_vector(0..self.n),
        }
    }
}
