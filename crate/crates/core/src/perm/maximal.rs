use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{right_kernel, Matrix};

use super::group::PermGroup;
use super::permutation::Perm;

/// Coordinates on the elementary abelian quotient `P / Phi(P)` of a 2-group.
#[derive(Clone, Debug)]
pub struct FrattiniQuotient {
    phi: PermGroup,
    basis: Vec<Perm>,
    /// `tower[r] = <Phi, b_1, .., b_r>`.
    tower: Vec<PermGroup>,
}

impl FrattiniQuotient {
    pub fn new(p: &PermGroup) -> Result<FrattiniQuotient> {
        let phi = p.frattini_2group()?;
        let mut tower = vec![phi.clone()];
        let mut basis = Vec::new();
        for g in p.gens() {
            let top = tower.last().expect("tower is nonempty");
            if !top.contains(g) {
                let next = top.join(std::slice::from_ref(g));
                basis.push(g.clone());
                tower.push(next);
            }
        }
        Ok(FrattiniQuotient { phi, basis, tower })
    }

    pub fn phi(&self) -> &PermGroup {
        &self.phi
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Perm] {
        &self.basis
    }

    /// Coordinates of `g` relative to the basis, or an error if `g` lies outside `P`.
    pub fn coordinates(&self, g: &Perm) -> Result<Vec<bool>> {
        let c = self.rank();
        if !self.tower[c].contains(g) {
            return Err(Error::Domain(format!("{g} is not in the group")));
        }
        let mut x = g.clone();
        let mut coords = vec![false; c];
        for r in (1..=c).rev() {
            if !self.tower[r - 1].contains(&x) {
                coords[r - 1] = true;
                x = x.mul(&self.basis[r - 1].inv());
            }
        }
        Ok(coords)
    }

    /// An element with the given coordinates.
    pub fn lift(&self, v: &[bool]) -> Perm {
        let n = self.phi.degree();
        v.iter()
            .zip(&self.basis)
            .filter(|(&bit, _)| bit)
            .fold(Perm::identity(n), |acc, (_, b)| acc.mul(b))
    }

    /// The maximal subgroup on which the functional `f` vanishes.
    pub fn kernel_of(&self, f: &[bool]) -> PermGroup {
        let c = self.rank();
        let row = Matrix::from_fn(Field::GF2, 1, c, |_, j| if f[j] { Elem::ONE } else { Elem::ZERO });
        let ker = right_kernel(&row);
        let mut gens: Vec<Perm> = self.phi.gens().to_vec();
        for i in 0..ker.dim() {
            let v: Vec<bool> = (0..c).map(|j| !ker.basis().get(i, j).is_zero()).collect();
            gens.push(self.lift(&v));
        }
        PermGroup::new(self.phi.degree(), gens).expect("degrees match")
    }
}

/// Every maximal subgroup of the 2-group `p` containing `s`, one per
/// hyperplane of `P / Phi(P)` containing the image of `s`, in the order of
/// the annihilating functionals read as binary numbers.
pub fn maximal_subgroups_containing(p: &PermGroup, s: &PermGroup) -> Result<Vec<PermGroup>> {
    let quot = FrattiniQuotient::new(p)?;
    maximal_subgroups_in_quotient(&quot, s)
}

pub fn maximal_subgroups_in_quotient(quot: &FrattiniQuotient, s: &PermGroup) -> Result<Vec<PermGroup>> {
    Ok(annihilating_functionals(quot, s)?.iter().map(|f| quot.kernel_of(f)).collect())
}

/// Nonzero functionals on `P / Phi(P)` vanishing on the image of `s`.
pub fn annihilating_functionals(quot: &FrattiniQuotient, s: &PermGroup) -> Result<Vec<Vec<bool>>> {
    let c = quot.rank();
    let mut image = Matrix::zeros(Field::GF2, 0, c);
    for g in s.gens() {
        let v = quot.coordinates(g)?;
        let row = Matrix::from_fn(Field::GF2, 1, c, |_, j| if v[j] { Elem::ONE } else { Elem::ZERO });
        image = image.vstack(&row);
    }
    let ann = right_kernel(&image);
    let a = ann.dim();
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << a) {
        let mut f = vec![false; c];
        for i in 0..a {
            if mask >> i & 1 == 1 {
                for (j, fj) in f.iter_mut().enumerate() {
                    *fj ^= !ann.basis().get(i, j).is_zero();
                }
            }
        }
        out.push(f);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_of_order_eight() {
        let p4 = PermGroup::new(4, vec![Perm::cycles(4, &[&[1, 2]]), Perm::cycles(4, &[&[1, 3], &[2, 4]])]).unwrap();
        let phi = p4.frattini_2group().unwrap();
        let maxes = maximal_subgroups_containing(&p4, &phi).unwrap();
        assert_eq!(maxes.len(), 3);
        for m in &maxes {
            assert_eq!(m.order(), 4);
        }
        assert!(maximal_subgroups_containing(&p4, &p4).unwrap().is_empty());
        let outside = PermGroup::new(4, vec![Perm::cycles(4, &[&[1, 2, 3]])]).unwrap();
        assert!(maximal_subgroups_containing(&p4, &outside).is_err());
    }
}
