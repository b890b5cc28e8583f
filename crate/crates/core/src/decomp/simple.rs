use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::gmod::GModule;
use crate::linalg::{factor_poly, left_kernel, min_poly, spin, Matrix, Subspace};

/// Random algebra elements tried before giving up.
const ATTEMPTS: usize = 256;
/// Words kept for building random algebra elements.
const POOL: usize = 12;

/// Outcome of the Holt-Rees form of Norton's irreducibility test.
#[derive(Clone, Debug)]
pub enum Simplicity {
    Simple,
    /// A proper nonzero invariant subspace.
    Reducible(Subspace),
}

fn transposes(actions: &[Matrix]) -> Vec<Matrix> {
    actions.iter().map(Matrix::transpose).collect()
}

/// The subspace annihilated by every row of `dual`, invariant when `dual`
/// is invariant under the transposed actions.
fn annihilator(dual: &Subspace) -> Subspace {
    left_kernel(&dual.basis().transpose())
}

/// Searches for a proper submodule with random elements of the group algebra.
pub fn simplicity(v: &GModule, seed: u64) -> Result<Simplicity> {
    let f = v.field();
    let d = v.dim();
    if d == 0 {
        return Err(Error::Domain("the zero module is neither simple nor reducible".into()));
    }
    if d == 1 {
        return Ok(Simplicity::Simple);
    }
    let actions = v.actions();
    if actions.is_empty() {
        let line = Matrix::from_fn(f, 1, d, |_, j| if j == 0 { Elem::ONE } else { Elem::ZERO });
        return Ok(Simplicity::Reducible(Subspace::from_rows(&line)));
    }
    let dual_actions = transposes(actions);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pool: Vec<Matrix> = actions.to_vec();
    let q = f.order();
    for _ in 0..ATTEMPTS {
        let i = rng.gen_range(0..pool.len());
        let j = rng.gen_range(0..pool.len());
        let word = pool[i].mul(&pool[j]);
        if pool.len() < POOL {
            pool.push(word);
        } else {
            let k = rng.gen_range(0..pool.len());
            pool[k] = word;
        }
        let mut a = Matrix::zeros(f, d, d);
        for m in &pool {
            let c = f.elem(rng.gen_range(0..q) as u8)?;
            if !c.is_zero() {
                a.axpy(c, m);
            }
        }
        for (p, _) in factor_poly(&min_poly(&a)) {
            let fa = p.eval_matrix(&a);
            let null = left_kernel(&fa);
            if Some(null.dim()) != p.degree() {
                continue;
            }
            let seed_vec = null.basis().row(0);
            let sub = spin(&seed_vec, actions);
            if sub.dim() < d {
                return Ok(Simplicity::Reducible(sub));
            }
            let dual_null = left_kernel(&fa.transpose());
            let dual_sub = spin(&dual_null.basis().row(0), &dual_actions);
            if dual_sub.dim() < d {
                return Ok(Simplicity::Reducible(annihilator(&dual_sub)));
            }
            return Ok(Simplicity::Simple);
        }
    }
    Err(Error::Inconclusive(format!(
        "no algebra element with a usable null space among {ATTEMPTS} tries on {}",
        v.label()
    )))
}

pub fn is_simple(v: &GModule, seed: u64) -> Result<bool> {
    Ok(matches!(simplicity(v, seed)?, Simplicity::Simple))
}

/// Dimensions of the factors of a composition series, from the bottom up.
pub fn composition_factor_dims(v: &GModule, seed: u64) -> Result<Vec<usize>> {
    match simplicity(v, seed)? {
        Simplicity::Simple => Ok(vec![v.dim()]),
        Simplicity::Reducible(sub) => {
            let lower = v.submodule(sub.basis())?;
            let upper = v.quotient(&sub)?;
            let mut dims = composition_factor_dims(&lower, seed)?;
            dims.extend(composition_factor_dims(&upper, seed)?);
            Ok(dims)
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::constructions::{natural_modules, NaturalKind};
    use crate::field::Field;
    use crate::perm::PermGroup;

    fn natural(n: usize, group: PermGroup, kind: NaturalKind, field: Field) -> GModule {
        let nat = natural_modules(n, field).unwrap();
        GModule::natural(Arc::new(group), &nat, kind, "natural").unwrap()
    }

    #[test]
    fn heart_is_simple_for_alternating_groups() {
        for n in [5usize, 6, 10] {
            let e = natural(n, PermGroup::alternating(n), NaturalKind::Heart, Field::GF2);
            assert!(is_simple(&e, 3).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn permutation_module_series() {
        let m = natural(10, PermGroup::symmetric(10), NaturalKind::Permutation, Field::GF2);
        assert!(!is_simple(&m, 1).unwrap());
        assert_eq!(composition_factor_dims(&m, 1).unwrap(), vec![1, 8, 1]);
        let m7 = natural(7, PermGroup::symmetric(7), NaturalKind::Permutation, Field::GF2);
        let mut dims = composition_factor_dims(&m7, 1).unwrap();
        dims.sort_unstable();
        assert_eq!(dims, vec![1, 6]);
    }

    #[test]
    fn degree_four_heart_splits_over_gf4() {
        let e2 = natural(4, PermGroup::alternating(4), NaturalKind::Heart, Field::GF2);
        assert!(is_simple(&e2, 0).unwrap());
        let e4 = natural(4, PermGroup::alternating(4), NaturalKind::Heart, Field::GF4);
        assert!(!is_simple(&e4, 0).unwrap());
        assert_eq!(composition_factor_dims(&e4, 0).unwrap(), vec![1, 1]);
    }
}
