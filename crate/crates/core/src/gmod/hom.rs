use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{left_kernel, Matrix, SpanSolver};

use super::module::GModule;

/// Coefficient vectors swept exhaustively when `|F|^dim` stays below this.
const SWEEP_LIMIT: usize = 1 << 16;
/// Random combinations tried when the sweep is too large.
const RANDOM_TRIES: usize = 256;

/// A basis of `Hom_{FG}(V, W)`: matrices `X` with `A_g X = X B_g`.
#[derive(Clone, Debug)]
pub struct HomSpace {
    field: Field,
    rows: usize,
    cols: usize,
    basis: Vec<Matrix>,
    flat: Matrix,
}

fn same_action_group(v: &GModule, w: &GModule) -> Result<()> {
    if v.group().gens() != w.group().gens() {
        return Err(Error::Domain("modules are for different generator lists".into()));
    }
    if v.field() != w.field() {
        return Err(Error::Domain("modules are over different fields".into()));
    }
    Ok(())
}

/// The matrix of `X -> A X + X B` on row-major flattened `X`.
fn intertwining_operator(a: &Matrix, b: &Matrix) -> Matrix {
    let f = a.field();
    let (dv, dw) = (a.rows(), b.rows());
    let n = dv * dw;
    let mut l = Matrix::zeros(f, n, n);
    for i in 0..dv {
        for k in 0..dv {
            let c = a.get(i, k);
            if c.is_zero() {
                continue;
            }
            for j in 0..dw {
                let (r, s) = (k * dw + j, i * dw + j);
                l.set(r, s, f.add(l.get(r, s), c));
            }
        }
    }
    for i in 0..dv {
        for k in 0..dw {
            for j in 0..dw {
                let c = b.get(k, j);
                if !c.is_zero() {
                    let (r, s) = (i * dw + k, i * dw + j);
                    l.set(r, s, f.add(l.get(r, s), c));
                }
            }
        }
    }
    l
}

/// Solves the intertwining equations one generator at a time.
pub fn hom_space(v: &GModule, w: &GModule) -> Result<HomSpace> {
    same_action_group(v, w)?;
    let f = v.field();
    let (dv, dw) = (v.dim(), w.dim());
    let n = dv * dw;
    let pairs: Vec<(&Matrix, &Matrix)> = v.actions().iter().zip(w.actions()).collect();
    let mut flat = match pairs.first() {
        None => Matrix::identity(f, n),
        Some((a, b)) => left_kernel(&intertwining_operator(a, b)).basis().clone(),
    };
    for (a, b) in pairs.iter().skip(1) {
        if flat.rows() == 0 {
            break;
        }
        let mut t = Matrix::zeros(f, 0, n);
        for r in 0..flat.rows() {
            let x = flat.unflatten_row(r, dv, dw);
            t = t.vstack(&a.mul(&x).add(&x.mul(b)).flatten());
        }
        let coeffs = left_kernel(&t);
        flat = coeffs.basis().mul(&flat);
    }
    let basis = (0..flat.rows()).map(|r| flat.unflatten_row(r, dv, dw)).collect();
    Ok(HomSpace { field: f, rows: dv, cols: dw, basis, flat })
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// `Σ c_i X_i`.
    pub fn combine(&self, coeffs: &[Elem]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.rows, self.cols);
        for (c, x) in coeffs.iter().zip(&self.basis) {
            if !c.is_zero() {
                out.axpy(*c, x);
            }
        }
        out
    }

    /// Coordinates of `x` in the basis, if it is an intertwiner.
    pub fn coordinates(&self, x: &Matrix) -> Option<Vec<Elem>> {
        SpanSolver::new(&self.flat).solve(&x.flatten())
    }

    fn solver(&self) -> SpanSolver {
        SpanSolver::new(&self.flat)
    }
}

/// `End_{FG}(V)` with a lazily computed structure table.
#[derive(Debug)]
pub struct EndoAlgebra {
    space: HomSpace,
    solver: SpanSolver,
    table: OnceLock<Vec<Vec<Vec<Elem>>>>,
}

impl Clone for EndoAlgebra {
    fn clone(&self) -> EndoAlgebra {
        EndoAlgebra { space: self.space.clone(), solver: self.solver.clone(), table: OnceLock::new() }
    }
}

pub fn endo_algebra(v: &GModule) -> Result<EndoAlgebra> {
    let space = hom_space(v, v)?;
    let solver = space.solver();
    Ok(EndoAlgebra { space, solver, table: OnceLock::new() })
}

impl EndoAlgebra {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn field(&self) -> Field {
        self.space.field
    }

    /// Dimension of the module acted on.
    pub fn degree(&self) -> usize {
        self.space.rows
    }

    pub fn basis(&self) -> &[Matrix] {
        self.space.basis()
    }

    pub fn space(&self) -> &HomSpace {
        &self.space
    }

    pub fn element(&self, coeffs: &[Elem]) -> Matrix {
        self.space.combine(coeffs)
    }

    pub fn coordinates(&self, x: &Matrix) -> Option<Vec<Elem>> {
        if x.rows() != self.space.rows || x.cols() != self.space.cols {
            return None;
        }
        self.solver.solve(&x.flatten())
    }

    pub fn identity_coordinates(&self) -> Vec<Elem> {
        self.coordinates(&Matrix::identity(self.field(), self.degree()))
            .expect("identity is an endomorphism")
    }

    /// `table()[i][j]` holds the coordinates of `b_i b_j`.
    pub fn table(&self) -> &[Vec<Vec<Elem>>] {
        self.table.get_or_init(|| {
            let b = self.basis();
            b.iter()
                .map(|x| {
                    b.iter()
                        .map(|y| self.coordinates(&x.mul(y)).expect("endomorphisms compose"))
                        .collect()
                })
                .collect()
        })
    }

    /// Product in coordinates, using the structure table.
    pub fn mul_coords(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let f = self.field();
        let t = self.table();
        let mut out = vec![Elem::ZERO; self.dim()];
        for (i, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = f.mul(a, b);
                for (o, &c) in out.iter_mut().zip(&t[i][j]) {
                    *o = f.add(*o, f.mul(ab, c));
                }
            }
        }
        out
    }

    pub fn is_commutative(&self) -> bool {
        let t = self.table();
        (0..self.dim()).all(|i| (0..i).all(|j| t[i][j] == t[j][i]))
    }

    /// Checks associativity on the basis triples `(i, j, k)` listed.
    pub fn is_associative_on(&self, triples: &[(usize, usize, usize)]) -> bool {
        let unit = |i: usize| {
            let mut v = vec![Elem::ZERO; self.dim()];
            v[i] = Elem::ONE;
            v
        };
        triples.iter().all(|&(i, j, k)| {
            let left = self.mul_coords(&self.mul_coords(&unit(i), &unit(j)), &unit(k));
            let right = self.mul_coords(&unit(i), &self.mul_coords(&unit(j), &unit(k)));
            left == right
        })
    }
}

/// Result of an isomorphism search.
#[derive(Clone, Debug)]
pub enum IsoOutcome {
    /// An invertible intertwiner `X` with `A_g X = X B_g`.
    Isomorphic(Matrix),
    /// A dimension count rules out isomorphism.
    NotIsomorphic(String),
    /// No invertible combination met within the search budget.
    NotFound { tried: usize },
}

impl IsoOutcome {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoOutcome::Isomorphic(_))
    }

    pub fn intertwiner(&self) -> Option<&Matrix> {
        match self {
            IsoOutcome::Isomorphic(x) => Some(x),
            _ => None,
        }
    }
}

/// Searches `Hom(V, W)` for an invertible element.
pub fn iso_test(v: &GModule, w: &GModule, seed: u64) -> Result<IsoOutcome> {
    same_action_group(v, w)?;
    if v.dim() != w.dim() {
        return Ok(IsoOutcome::NotIsomorphic(format!("dimensions {} and {}", v.dim(), w.dim())));
    }
    let hom = hom_space(v, w)?;
    if v.dim() == 0 {
        return Ok(IsoOutcome::Isomorphic(Matrix::zeros(v.field(), 0, 0)));
    }
    if hom.dim() == 0 {
        return Ok(IsoOutcome::NotIsomorphic("no nonzero homomorphism".into()));
    }
    let end_v = hom_space(v, v)?.dim();
    if hom.dim() != end_v {
        return Ok(IsoOutcome::NotIsomorphic(format!("dim Hom(V,W) = {} but dim End(V) = {end_v}", hom.dim())));
    }
    let back = hom_space(w, v)?.dim();
    let end_w = hom_space(w, w)?.dim();
    if back != end_w {
        return Ok(IsoOutcome::NotIsomorphic(format!("dim Hom(W,V) = {back} but dim End(W) = {end_w}")));
    }
    if let Some(x) = hom.basis().iter().find(|x| x.is_invertible()) {
        return Ok(IsoOutcome::Isomorphic(x.clone()));
    }
    let f = hom.field();
    let q = f.order();
    let k = hom.dim();
    let total = q.checked_pow(k as u32).filter(|&t| t <= SWEEP_LIMIT);
    if let Some(total) = total {
        let mut coeffs = vec![Elem::ZERO; k];
        for code in 1..total {
            let mut c = code;
            for slot in coeffs.iter_mut() {
                *slot = f.elem((c % q) as u8)?;
                c /= q;
            }
            let x = hom.combine(&coeffs);
            if x.is_invertible() {
                return Ok(IsoOutcome::Isomorphic(x));
            }
        }
        return Ok(IsoOutcome::NotIsomorphic(format!("none of the {total} elements of Hom(V,W) is invertible")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_TRIES {
        let coeffs: Vec<Elem> = (0..k).map(|_| f.elem(rng.gen_range(0..q) as u8)).collect::<Result<_>>()?;
        let x = hom.combine(&coeffs);
        if x.is_invertible() {
            return Ok(IsoOutcome::Isomorphic(x));
        }
    }
    Ok(IsoOutcome::NotFound { tried: RANDOM_TRIES })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::constructions::{natural_modules, NaturalKind};
    use crate::perm::{Perm, PermGroup};

    fn check_intertwiners(v: &GModule, w: &GModule, hom: &HomSpace) {
        for x in hom.basis() {
            for (a, b) in v.actions().iter().zip(w.actions()) {
                assert_eq!(a.mul(x), x.mul(b));
            }
        }
    }

    #[test]
    fn trivial_into_permutation_module() {
        let g = Arc::new(PermGroup::symmetric(6));
        let nat = natural_modules(6, Field::GF2).unwrap();
        let m = GModule::natural(Arc::clone(&g), &nat, NaturalKind::Permutation, "M").unwrap();
        let t = GModule::trivial(g, Field::GF2);
        let hom = hom_space(&t, &m).unwrap();
        assert_eq!(hom.dim(), 1);
        check_intertwiners(&t, &m, &hom);
        assert_eq!(hom_space(&m, &t).unwrap().dim(), 1);
    }

    #[test]
    fn heart_is_absolutely_irreducible_for_alternating_group() {
        let g = Arc::new(PermGroup::alternating(10));
        let nat = natural_modules(10, Field::GF2).unwrap();
        let e = GModule::natural(g, &nat, NaturalKind::Heart, "E").unwrap();
        let end = endo_algebra(&e).unwrap();
        assert_eq!(end.dim(), 1);
        assert_eq!(end.identity_coordinates(), vec![Elem::ONE]);
    }

    #[test]
    fn cyclic_regular_module_endomorphisms() {
        let c2 = Arc::new(PermGroup::new(2, vec![Perm::cycles(2, &[&[1, 2]])]).unwrap());
        let reg = GModule::regular(c2, Field::GF2, 10).unwrap();
        let end = endo_algebra(&reg).unwrap();
        assert_eq!(end.dim(), 2);
        assert!(end.is_commutative());
        assert!(end.is_associative_on(&[(0, 1, 1), (1, 1, 0), (1, 0, 1)]));
    }

    #[test]
    fn intertwining_operator_matches_products() {
        let f = Field::GF4;
        let a = Matrix::from_values(f, 2, 2, &[1, 2, 0, 3]).unwrap();
        let b = Matrix::from_values(f, 3, 3, &[0, 1, 0, 1, 0, 0, 2, 2, 1]).unwrap();
        let x = Matrix::from_values(f, 2, 3, &[1, 0, 2, 3, 1, 0]).unwrap();
        let l = intertwining_operator(&a, &b);
        assert_eq!(x.flatten().mul(&l), a.mul(&x).add(&x.mul(&b)).flatten());
    }

    #[test]
    fn isomorphism_search() {
        let g = Arc::new(PermGroup::alternating(5));
        let nat = natural_modules(5, Field::GF2).unwrap();
        let e = GModule::natural(Arc::clone(&g), &nat, NaturalKind::Heart, "E").unwrap();
        let mut p = Matrix::identity(Field::GF2, 4);
        p.set(0, 3, Elem::ONE);
        p.set(2, 1, Elem::ONE);
        let e2 = e.change_basis(&p).unwrap();
        let out = iso_test(&e, &e2, 1).unwrap();
        let x = out.intertwiner().expect("isomorphic");
        for (a, b) in e.actions().iter().zip(e2.actions()) {
            assert_eq!(a.mul(x), x.mul(b));
        }
        let t = GModule::trivial(g, Field::GF2);
        let t4 = t.direct_sum(&t).unwrap().direct_sum(&t).unwrap().direct_sum(&t).unwrap();
        assert!(matches!(iso_test(&e, &t4, 1).unwrap(), IsoOutcome::NotIsomorphic(_)));
    }
}
