use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::gmod::{endo_algebra, EndoAlgebra, GModule};
use crate::linalg::{factor_poly, min_poly, Echelon, Matrix, Poly};

/// Random endomorphisms tried for a CRT split, beyond the basis itself.
const RANDOM_ELEMENTS: usize = 24;
/// Largest `|End(V)|` enumerated exhaustively.
pub const DEFAULT_ENUMERATION_LIMIT: u64 = 1 << 20;

/// Whether `End(V)` is local, with a witness either way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LocalityCertificate {
    /// `End(V)/J ≅ GF(q^residue_degree)` over the module's field `GF(q)`.
    Local { residue_degree: usize },
    /// A nontrivial idempotent endomorphism.
    Splits { idempotent: Matrix },
    /// The pipeline ran out of methods.
    Unknown { reason: String },
}

impl LocalityCertificate {
    pub fn is_local(&self) -> bool {
        matches!(self, LocalityCertificate::Local { .. })
    }

    pub fn verdict(&self) -> Verdict {
        match self {
            LocalityCertificate::Local { .. } => Verdict::Local,
            LocalityCertificate::Splits { .. } => Verdict::Splits,
            LocalityCertificate::Unknown { .. } => Verdict::Unknown,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Local,
    Splits,
    Unknown,
}

/// The idempotent `e` of `F[a]` projecting onto the generalized kernel of
/// the first irreducible factor of `min_poly(a)`, when that polynomial has
/// at least two distinct irreducible factors.
pub fn crt_idempotent(a: &Matrix) -> Option<Matrix> {
    let m = min_poly(a);
    let factors = factor_poly(&m);
    if factors.len() < 2 {
        return None;
    }
    let (f1, e1) = &factors[0];
    let g1 = f1.pow(*e1);
    let rest = m.divrem(&g1).0;
    let (_, _, t) = g1.ext_gcd(&rest);
    let e = t.mul(&rest).rem(&m).eval_matrix(a);
    debug_assert!(is_nontrivial_idempotent(&e));
    Some(e)
}

pub fn is_nontrivial_idempotent(e: &Matrix) -> bool {
    e.mul(e) == *e && !e.is_zero() && !e.is_identity()
}

fn is_nilpotent(a: &Matrix) -> bool {
    let mut p = a.clone();
    let mut k = 1;
    while k < a.rows() {
        p = p.mul(&p);
        k *= 2;
    }
    p.is_zero()
}

fn random_element<R: Rng>(end: &EndoAlgebra, rng: &mut R) -> Result<Matrix> {
    let f = end.field();
    let q = f.order();
    let coeffs: Vec<Elem> = (0..end.dim()).map(|_| f.elem(rng.gen_range(0..q) as u8)).collect::<Result<_>>()?;
    Ok(end.element(&coeffs))
}

/// Certifies whether `End(V)` is local.
pub fn is_indecomposable(v: &GModule, seed: u64) -> Result<LocalityCertificate> {
    is_indecomposable_with(v, seed, DEFAULT_ENUMERATION_LIMIT)
}

pub fn is_indecomposable_with(v: &GModule, seed: u64, enumeration_limit: u64) -> Result<LocalityCertificate> {
    if v.dim() == 0 {
        return Err(Error::Domain("the zero module has no locality certificate".into()));
    }
    let end = endo_algebra(v)?;
    locality_of(&end, seed, enumeration_limit)
}

/// The locality pipeline on a precomputed endomorphism algebra.
pub fn locality_of(end: &EndoAlgebra, seed: u64, enumeration_limit: u64) -> Result<LocalityCertificate> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples: Vec<Matrix> = end.basis().to_vec();
    for _ in 0..RANDOM_ELEMENTS {
        samples.push(random_element(end, &mut rng)?);
    }
    for a in &samples {
        if let Some(e) = crt_idempotent(a) {
            return Ok(LocalityCertificate::Splits { idempotent: e });
        }
    }
    let q = end.field().order() as u64;
    let size = u32::try_from(end.dim()).ok().and_then(|d| q.checked_pow(d));
    if let Some(size) = size.filter(|&s| s <= enumeration_limit) {
        return Ok(enumerate_idempotents(end, size));
    }
    let rad = match nilpotent_radical(end) {
        Ok(r) => r,
        Err(Error::Inconclusive(reason)) => return Ok(LocalityCertificate::Unknown { reason }),
        Err(e) => return Err(e),
    };
    let m = end.dim() - rad.dim();
    for a in &samples {
        let factors = factor_poly(&min_poly(a));
        if factors.len() == 1 && factors[0].0.degree() == Some(m) {
            return Ok(LocalityCertificate::Local { residue_degree: m });
        }
    }
    Ok(LocalityCertificate::Unknown {
        reason: format!("no sampled endomorphism generates the {m}-dimensional residue algebra"),
    })
}

/// Sweeps every element of `End(V)`, recording a nontrivial idempotent or
/// counting nilpotents to read off the residue degree.
fn enumerate_idempotents(end: &EndoAlgebra, size: u64) -> LocalityCertificate {
    let f = end.field();
    let q = f.order() as u64;
    let mut coeffs = vec![Elem::ZERO; end.dim()];
    let mut nilpotent = 0u64;
    for code in 0..size {
        let mut c = code;
        for slot in coeffs.iter_mut() {
            *slot = f.elem((c % q) as u8).expect("digit below field order");
            c /= q;
        }
        let x = end.element(&coeffs);
        if is_nontrivial_idempotent(&x) {
            return LocalityCertificate::Splits { idempotent: x };
        }
        if is_nilpotent(&x) {
            nilpotent += 1;
        }
    }
    let mut rad_dim = 0;
    let mut count = 1u64;
    while count < nilpotent {
        count *= q;
        rad_dim += 1;
    }
    LocalityCertificate::Local { residue_degree: end.dim() - rad_dim }
}

/// The Jacobson radical of an endomorphism algebra whose semisimple quotient
/// is commutative, as a list of matrices.
#[derive(Clone, Debug)]
pub struct Radical {
    basis: Vec<Matrix>,
}

impl Radical {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    /// Nilpotency index: the least `k` with `J^k = 0`.
    pub fn nilpotency_index(&self) -> usize {
        let mut power = self.basis.clone();
        let mut k = 1;
        while !power.is_empty() {
            power = span_of_products(&power, &self.basis);
            k += 1;
        }
        k
    }
}

fn span_of(mats: impl IntoIterator<Item = Matrix>, field: Field, d: usize) -> Vec<Matrix> {
    let mut ech = Echelon::new(field, d * d);
    for m in mats {
        ech.insert(&m.flatten(), 0);
    }
    let rows = ech.rows();
    (0..rows.rows()).map(|r| rows.unflatten_row(r, d, d)).collect()
}

fn span_of_products(left: &[Matrix], right: &[Matrix]) -> Vec<Matrix> {
    let Some(first) = left.first().or(right.first()) else {
        return Vec::new();
    };
    let (f, d) = (first.field(), first.rows());
    span_of(left.iter().flat_map(|x| right.iter().map(move |y| x.mul(y))), f, d)
}

/// The two-sided ideal generated by `r(b)` for each basis element `b`, with
/// `r` the squarefree part of its minimal polynomial, and by all
/// commutators of basis elements. It equals the radical when it is
/// nilpotent, since the quotient is then commutative and spanned by
/// semisimple elements.
pub fn nilpotent_radical(end: &EndoAlgebra) -> Result<Radical> {
    let f = end.field();
    let d = end.degree();
    let basis = end.basis();
    let mut seeds: Vec<Matrix> = Vec::new();
    for b in basis {
        let squarefree = factor_poly(&min_poly(b))
            .into_iter()
            .fold(Poly::one(f), |acc, (p, _)| acc.mul(&p));
        seeds.push(squarefree.eval_matrix(b));
    }
    for (i, x) in basis.iter().enumerate() {
        for y in &basis[..i] {
            seeds.push(x.mul(y).add(&y.mul(x)));
        }
    }
    let mut ech = Echelon::new(f, d * d);
    let mut queue: Vec<Matrix> = Vec::new();
    for s in seeds {
        if ech.insert(&s.flatten(), 0) {
            queue.push(s);
        }
    }
    while let Some(x) = queue.pop() {
        for b in basis {
            for y in [x.mul(b), b.mul(&x)] {
                if ech.insert(&y.flatten(), 0) {
                    queue.push(y);
                }
            }
        }
    }
    let rows = ech.rows();
    let ideal: Vec<Matrix> = (0..rows.rows()).map(|r| rows.unflatten_row(r, d, d)).collect();
    let mut power = ideal.clone();
    let mut last = power.len() + 1;
    while !power.is_empty() {
        if power.len() >= last {
            return Err(Error::Inconclusive(
                "the semisimple quotient of the endomorphism algebra is not commutative".into(),
            ));
        }
        last = power.len();
        power = span_of_products(&power, &ideal);
    }
    Ok(Radical { basis: ideal })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::perm::{Perm, PermGroup};

    fn cyclic(order: usize) -> Arc<PermGroup> {
        let cycle: Vec<usize> = (1..=order).collect();
        Arc::new(PermGroup::new(order, vec![Perm::cycles(order, &[&cycle])]).unwrap())
    }

    #[test]
    fn regular_cyclic_two_group_is_local() {
        let reg = GModule::regular(cyclic(4), Field::GF2, 8).unwrap();
        let cert = is_indecomposable(&reg, 1).unwrap();
        assert_eq!(cert, LocalityCertificate::Local { residue_degree: 1 });
        let end = endo_algebra(&reg).unwrap();
        let rad = nilpotent_radical(&end).unwrap();
        assert_eq!(rad.dim(), 3);
        assert_eq!(rad.nilpotency_index(), 4);
        assert_eq!(
            locality_of(&end, 1, 1).unwrap(),
            LocalityCertificate::Local { residue_degree: 1 }
        );
    }

    #[test]
    fn odd_order_regular_module_splits() {
        let reg = GModule::regular(cyclic(3), Field::GF2, 8).unwrap();
        match is_indecomposable(&reg, 1).unwrap() {
            LocalityCertificate::Splits { idempotent } => {
                assert!(is_nontrivial_idempotent(&idempotent));
                for a in reg.actions() {
                    assert_eq!(a.mul(&idempotent), idempotent.mul(a));
                }
            }
            other => panic!("expected a split, got {other:?}"),
        }
    }

    #[test]
    fn crt_idempotents() {
        let f = Field::GF4;
        let a = Matrix::from_values(f, 3, 3, &[1, 1, 0, 0, 1, 0, 0, 0, 2]).unwrap();
        let e = crt_idempotent(&a).unwrap();
        assert!(is_nontrivial_idempotent(&e));
        assert_eq!(a.mul(&e), e.mul(&a));
        assert!(crt_idempotent(&Matrix::identity(f, 3)).is_none());
    }
}
