use crate::error::{Error, Result};
use crate::linalg::{left_kernel, spin, Matrix, Subspace};
use crate::perm::Perm;

use super::module::GModule;

/// The matrix of `g^+ = Σ_{k < ord(g)} g^k`.
pub fn norm_operator(v: &GModule, g: &Perm) -> Result<Matrix> {
    let a = v.action_of(g)?;
    let mut power = Matrix::identity(v.field(), v.dim());
    let mut sum = Matrix::zeros(v.field(), v.dim(), v.dim());
    for _ in 0..g.order() {
        sum.add_assign(&power);
        power = power.mul(&a);
    }
    Ok(sum)
}

fn require_two_group(v: &GModule) -> Result<()> {
    if v.group().is_two_group() {
        Ok(())
    } else {
        Err(Error::Domain(format!("group of order {} is not a 2-group", v.group().order())))
    }
}

fn minus_identity(a: &Matrix) -> Matrix {
    a.add(&Matrix::identity(a.field(), a.rows()))
}

/// The common fixed space, which is the socle over a 2-group.
pub fn socle_pgroup(v: &GModule) -> Result<Subspace> {
    require_two_group(v)?;
    let mut fixed = Subspace::full(v.field(), v.dim());
    for a in v.actions() {
        fixed = fixed.intersect(&left_kernel(&minus_identity(a)))?;
    }
    Ok(fixed)
}

/// The submodule generated by all `v (g - 1)`, which is the radical over a 2-group.
pub fn radical_pgroup(v: &GModule) -> Result<Subspace> {
    require_two_group(v)?;
    let images = v
        .actions()
        .iter()
        .fold(Matrix::zeros(v.field(), 0, v.dim()), |acc, a| acc.vstack(&minus_identity(a)));
    Ok(spin(&images, v.actions()))
}

/// Whether the trivial module is a direct summand: a fixed vector outside the radical.
pub fn trivial_summand_test(v: &GModule) -> Result<bool> {
    let soc = socle_pgroup(v)?;
    let rad = radical_pgroup(v)?;
    Ok(!rad.contains(&soc)?)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::constructions::{named_subgroups, natural_modules, sylow_alt_group, NaturalKind};
    use crate::field::Field;
    use crate::perm::PermGroup;

    fn heart_on(n: usize, group: PermGroup) -> (GModule, crate::constructions::NaturalModules) {
        let nat = natural_modules(n, Field::GF2).unwrap();
        let e = GModule::natural(Arc::new(group), &nat, NaturalKind::Heart, "E").unwrap();
        (e, nat)
    }

    #[test]
    fn norm_kernels() {
        let s = named_subgroups(14).unwrap();
        let (e, nat) = heart_on(14, s.q.clone());
        let n = norm_operator(&e, &s.y_alts[0]).unwrap();
        assert_eq!(left_kernel(&n).dim(), 11);
        let image = Subspace::from_rows(&n);
        let d = nat.distinguished();
        assert_eq!(image.dim(), 1);
        assert!(image.contains_rows(&nat.to_heart(&d.block[0]).unwrap()));
        let a = e.action_of(&s.y_alts[0]).unwrap();
        assert!(n.mul(&minus_identity(&a)).is_zero());

        let s = named_subgroups(12).unwrap();
        let (e, _) = heart_on(12, s.q.clone());
        assert_eq!(left_kernel(&norm_operator(&e, &s.xs[1]).unwrap()).dim(), 8);
        assert!(norm_operator(&e, &Perm::identity(12)).unwrap().is_identity());
    }

    #[test]
    fn socles_of_block_cycle_restrictions() {
        for (n, blocks) in [(14usize, vec![0usize, 1]), (12, vec![])] {
            let s = named_subgroups(n).unwrap();
            let (e, nat) = heart_on(n, s.y_alt.clone());
            let soc = socle_pgroup(&e).unwrap();
            assert_eq!(soc.dim(), 2, "n = {n}");
            let d = nat.distinguished();
            for j in blocks {
                assert!(soc.contains_rows(&nat.to_heart(&d.block[j]).unwrap()));
            }
            if n == 12 {
                assert!(soc.contains_rows(&nat.to_heart(&d.zero).unwrap()));
                assert!(soc.contains_rows(&nat.to_heart(&d.block[0]).unwrap()));
            }
        }
    }

    #[test]
    fn trivial_summands() {
        let (e7, _) = heart_on(7, sylow_alt_group(4).unwrap().extend_degree(7));
        assert!(trivial_summand_test(&e7).unwrap());
        let (e8, _) = heart_on(8, sylow_alt_group(8).unwrap());
        assert!(!trivial_summand_test(&e8).unwrap());
        let q4 = Arc::new(sylow_alt_group(4).unwrap());
        let reg = GModule::regular(q4, Field::GF2, 100).unwrap();
        assert!(!trivial_summand_test(&reg).unwrap());
        let one = GModule::regular(Arc::new(PermGroup::trivial(4)), Field::GF2, 1).unwrap();
        assert!(trivial_summand_test(&one).unwrap());
        assert_eq!(socle_pgroup(&reg).unwrap().dim(), 1);
        assert_eq!(radical_pgroup(&reg).unwrap().dim(), 3);
        let (a5, _) = heart_on(5, PermGroup::alternating(5));
        assert!(socle_pgroup(&a5).is_err());
    }
}
