use crate::error::{Error, Result};
use crate::field::{Elem, Field};

use super::matrix::{leading_index, read_entry, row_axpy, row_scale, Matrix};

/// An incrementally grown semi-echelon basis.
///
/// Each stored row has a one at its pivot and zeros at the pivots of all
/// rows inserted before it, so reducing a vector against the rows in
/// insertion order clears every pivot.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: Matrix,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(field: Field, dim: usize) -> Echelon {
        Echelon { rows: Matrix::zeros(field, 0, dim), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.rows.cols()
    }

    pub fn rows(&self) -> &Matrix {
        &self.rows
    }

    pub(crate) fn reduce_words(&self, v: &mut [u64]) {
        let f = self.rows.field();
        let cols = self.rows.cols();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = read_entry(f, v, p);
            if !c.is_zero() {
                row_axpy(f, v, c, self.rows.row_words(i), cols);
            }
        }
    }

    /// Reduces `v` and inserts the remainder if it is nonzero. Returns whether
    /// the dimension grew.
    pub(crate) fn insert_words(&mut self, mut v: Vec<u64>) -> bool {
        self.reduce_words(&mut v);
        let f = self.rows.field();
        match leading_index(f, &v) {
            None => false,
            Some(p) => {
                let lead = read_entry(f, &v, p);
                row_scale(f, &mut v, f.inv_nonzero(lead), self.rows.cols());
                self.rows.push_row_words(&v);
                self.pivots.push(p);
                true
            }
        }
    }

    /// Inserts row `i` of `m`.
    pub fn insert(&mut self, m: &Matrix, i: usize) -> bool {
        self.insert_words(m.row_words(i).to_vec())
    }

    pub fn contains(&self, m: &Matrix, i: usize) -> bool {
        let mut v = m.row_words(i).to_vec();
        self.reduce_words(&mut v);
        v.iter().all(|&w| w == 0)
    }

    pub fn into_subspace(self) -> Subspace {
        Subspace::from_rows(&self.rows)
    }
}

/// A subspace of row vectors, stored by its reduced echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace { basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// The row space of `m`.
    pub fn from_rows(m: &Matrix) -> Subspace {
        let r = m.rref();
        let basis = r.matrix.select_rows(&(0..r.rank).collect::<Vec<_>>());
        Subspace { basis, pivots: r.pivots }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient() != other.ambient() || self.field() != other.field() {
            return Err(Error::Domain(format!(
                "ambient mismatch: {} vs {}",
                self.ambient(),
                other.ambient()
            )));
        }
        Ok(())
    }

    /// Reduces row `i` of `m` modulo the subspace.
    pub fn reduce(&self, m: &Matrix, i: usize) -> Matrix {
        let mut out = m.row(i);
        let f = self.field();
        let cols = self.ambient();
        for (b, &p) in self.pivots.iter().enumerate() {
            let c = out.get(0, p);
            if !c.is_zero() {
                row_axpy(f, out.row_words_mut(0), c, self.basis.row_words(b), cols);
            }
        }
        out
    }

    /// Whether every row of `m` lies in the subspace.
    pub fn contains_rows(&self, m: &Matrix) -> bool {
        (0..m.rows()).all(|i| self.reduce(m, i).is_zero())
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check_ambient(other)?;
        Ok(self.contains_rows(&other.basis))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(Subspace::from_rows(&self.basis.vstack(&other.basis)))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let stacked = self.basis.vstack(&other.basis);
        let relations = left_kernel(&stacked);
        let a = self.dim();
        let coeffs = relations.basis.block(0, relations.dim(), 0, a);
        Ok(Subspace::from_rows(&coeffs.mul(&self.basis)))
    }

    /// Representatives of a basis of `self / sub`.
    pub fn quotient_basis(&self, sub: &Subspace) -> Result<Matrix> {
        if !self.contains(sub)? {
            return Err(Error::Domain("quotient by a subspace that is not contained".into()));
        }
        let mut ech = Echelon::new(self.field(), self.ambient());
        for i in 0..sub.dim() {
            ech.insert(&sub.basis, i);
        }
        let mut reps = Matrix::zeros(self.field(), 0, self.ambient());
        for i in 0..self.dim() {
            if ech.insert(&self.basis, i) {
                reps.push_row_words(self.basis.row_words(i));
            }
        }
        Ok(reps)
    }

    /// Whether `v * a` stays inside the subspace for every basis vector and action.
    pub fn is_invariant(&self, actions: &[Matrix]) -> bool {
        actions.iter().all(|a| self.contains_rows(&self.basis.mul(a)))
    }

    /// Coordinates of the rows of `m` in the subspace, relative to the rref basis.
    pub fn coordinates(&self, m: &Matrix) -> Option<Matrix> {
        if !self.contains_rows(m) {
            return None;
        }
        Some(m.select_cols(&self.pivots))
    }
}

/// `{v : v * a = 0}`.
pub fn left_kernel(a: &Matrix) -> Subspace {
    let (r, c) = (a.rows(), a.cols());
    let mut aug = a.hstack(&Matrix::identity(a.field(), r));
    let pivots = aug.rref_in_place(c);
    let rank = pivots.len();
    let kernel = aug.block(rank, r, c, c + r);
    Subspace::from_rows(&kernel)
}

/// `{x : a * x^T = 0}`, returned as row vectors.
pub fn right_kernel(a: &Matrix) -> Subspace {
    left_kernel(&a.transpose())
}

/// Smallest subspace containing the rows of `seeds` and closed under
/// right multiplication by every action.
pub fn spin(seeds: &Matrix, actions: &[Matrix]) -> Subspace {
    let mut ech = Echelon::new(seeds.field(), seeds.cols());
    let mut queue: Vec<Vec<u64>> = Vec::new();
    for i in 0..seeds.rows() {
        if ech.insert(seeds, i) {
            queue.push(ech.rows().row_words(ech.dim() - 1).to_vec());
        }
    }
    let width = seeds.cols();
    let field = seeds.field();
    while let Some(v) = queue.pop() {
        if ech.dim() == width {
            break;
        }
        let mut vm = Matrix::zeros(field, 0, width);
        vm.push_row_words(&v);
        for a in actions {
            let w = vm.mul(a);
            if ech.insert(&w, 0) {
                queue.push(ech.rows().row_words(ech.dim() - 1).to_vec());
            }
        }
    }
    ech.into_subspace()
}

/// Expresses vectors as combinations of a fixed list of generators.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    gens: usize,
    width: usize,
    reduced: Matrix,
    pivots: Vec<usize>,
}

impl SpanSolver {
    /// Prepares to solve `x * gens = v` for row vectors `v`.
    pub fn new(gens: &Matrix) -> SpanSolver {
        let (r, c) = (gens.rows(), gens.cols());
        let mut aug = gens.hstack(&Matrix::identity(gens.field(), r));
        let pivots = aug.rref_in_place(c);
        let rank = pivots.len();
        let reduced = aug.select_rows(&(0..rank).collect::<Vec<_>>());
        SpanSolver { gens: r, width: c, reduced, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// A coefficient vector `x` with `x * gens = v`, if `v` is in the span.
    pub fn solve(&self, v: &Matrix) -> Option<Vec<Elem>> {
        debug_assert_eq!(v.cols(), self.width);
        let f = self.reduced.field();
        let mut acc = Matrix::zeros(f, 1, self.width + self.gens);
        for j in 0..self.width {
            acc.set(0, j, v.get(0, j));
        }
        let mut x = vec![Elem::ZERO; self.gens];
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = acc.get(0, p);
            if !c.is_zero() {
                row_axpy(f, acc.row_words_mut(0), c, self.reduced.row_words(i), self.width + self.gens);
            }
        }
        if (0..self.width).any(|j| !acc.get(0, j).is_zero()) {
            return None;
        }
        for (g, xg) in x.iter_mut().enumerate() {
            *xg = acc.get(0, self.width + g);
        }
        Some(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2_rows(rows: &[&[u8]]) -> Matrix {
        Matrix::from_rows(Field::GF2, rows).unwrap()
    }

    #[test]
    fn kernel_of_shift_plus_one() {
        let n = Matrix::permutation(Field::GF2, &[1, 2, 3, 0]);
        let a = n.add(&Matrix::identity(Field::GF2, 4));
        // one Jordan block of size 4: n + 1 has rank 3
        let k = left_kernel(&a);
        assert_eq!(k.dim(), 1);
        assert!(k.basis().mul(&a).is_zero());
        // the norm 1 + n + n^2 + n^3 is the all-ones matrix of rank 1
        let norm = (1..4).fold(Matrix::identity(Field::GF2, 4), |acc, e| acc.add(&n.pow(e)));
        assert_eq!(left_kernel(&norm).dim(), 3);
        assert_eq!(left_kernel(&Matrix::zeros(Field::GF2, 5, 5)).dim(), 5);
    }

    #[test]
    fn lattice_operations() {
        let u = Subspace::from_rows(&gf2_rows(&[&[1, 1, 0, 0], &[0, 0, 1, 1]]));
        let v = Subspace::from_rows(&gf2_rows(&[&[1, 1, 1, 1], &[1, 0, 0, 0]]));
        assert_eq!(u.sum(&u).unwrap(), u);
        assert_eq!(u.intersect(&u).unwrap(), u);
        let meet = u.intersect(&v).unwrap();
        assert_eq!(meet.dim(), 1);
        assert!(meet.contains_rows(&gf2_rows(&[&[1, 1, 1, 1]])));
        assert_eq!(u.sum(&v).unwrap().dim(), 3);
        let q = u.quotient_basis(&meet).unwrap();
        assert_eq!(q.rows(), 1);
        assert!(u.quotient_basis(&v).is_err());
    }

    #[test]
    fn spin_of_difference_vector() {
        // the cyclic shift and a transposition generate S_5 on coordinates
        let f = Field::GF2;
        let cyc = Matrix::permutation(f, &[1, 2, 3, 4, 0]);
        let tr = Matrix::permutation(f, &[1, 0, 2, 3, 4]);
        let seed = Matrix::from_rows(f, &[[1u8, 1, 0, 0, 0]]).unwrap();
        assert_eq!(spin(&seed, &[cyc.clone(), tr.clone()]).dim(), 4);
        let all = Matrix::from_rows(f, &[[1u8; 5]]).unwrap();
        assert_eq!(spin(&all, &[cyc, tr]).dim(), 1);
    }

    #[test]
    fn span_solver_finds_coefficients() {
        let f = Field::GF4;
        let g = Matrix::from_rows(f, &[[1u8, 2, 0], [0, 1, 3], [1, 3, 3]]).unwrap();
        let s = SpanSolver::new(&g);
        assert_eq!(s.rank(), 2);
        let mut target = g.row(1);
        target.axpy(f.generator(), &g.row(0));
        let x = s.solve(&target).unwrap();
        let mut recon = Matrix::zeros(f, 1, 3);
        for (i, c) in x.iter().enumerate() {
            recon.axpy(*c, &g.row(i));
        }
        assert_eq!(recon, target);
        assert!(s.solve(&Matrix::from_rows(f, &[[0u8, 0, 1]]).unwrap()).is_none());
    }
}
