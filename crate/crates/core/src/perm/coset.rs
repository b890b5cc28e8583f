use std::collections::HashSet;

use crate::error::{Error, Result};

use super::group::PermGroup;
use super::permutation::Perm;

/// The lexicographically least image list among the elements of `H x`.
///
/// Works greedily down the chain of `H`: at level `i` the remaining freedom
/// is a coset of the stabilizer of `0..i`, whose image of `i` ranges over
/// that level's orbit.
pub fn canonical_coset_key(h: &PermGroup, x: &Perm) -> Vec<u8> {
    let chain = h.chain();
    let mut suffix = x.clone();
    for level in chain.levels() {
        if level.len() == 1 {
            continue;
        }
        let (best, _) = level
            .orbit()
            .iter()
            .enumerate()
            .map(|(idx, &p)| (idx, suffix.image(p as usize)))
            .min_by_key(|&(_, img)| img)
            .expect("orbit is nonempty");
        if best != 0 {
            suffix = level.rep(best).mul(&suffix);
        }
    }
    suffix.images().to_vec()
}

/// One representative of each right coset `H g` of `H` in `G`, found by a
/// breadth-first search over the generators of `G`.
pub fn right_transversal(g: &PermGroup, h: &PermGroup, budget: u128) -> Result<Vec<Perm>> {
    if !h.is_subgroup_of(g) {
        return Err(Error::Domain("subgroup is not contained in the group".into()));
    }
    let index = g.order() / h.order();
    if index > budget {
        return Err(Error::Budget { what: "coset enumeration".into(), needed: index, budget });
    }
    let index = index as usize;
    let mut reps = vec![Perm::identity(g.degree())];
    let mut seen: HashSet<Vec<u8>> = HashSet::with_capacity(index);
    seen.insert(canonical_coset_key(h, &reps[0]));
    let mut k = 0;
    while k < reps.len() && reps.len() < index {
        for s in g.gens() {
            let y = reps[k].mul(s);
            if seen.insert(canonical_coset_key(h, &y)) {
                reps.push(y);
                if reps.len() == index {
                    break;
                }
            }
        }
        k += 1;
    }
    debug_assert_eq!(reps.len(), index);
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transversal_sizes() {
        let a4 = PermGroup::alternating(4);
        let v4 = PermGroup::new(4, vec![Perm::cycles(4, &[&[1, 2], &[3, 4]]), Perm::cycles(4, &[&[1, 3], &[2, 4]])]).unwrap();
        assert_eq!(right_transversal(&a4, &v4, 100).unwrap().len(), 3);
        let a6 = PermGroup::alternating(6);
        let q = PermGroup::new(6, vec![Perm::cycles(6, &[&[1, 2], &[3, 4]]), Perm::cycles(6, &[&[3, 4], &[5, 6]])]).unwrap();
        let t = right_transversal(&a6, &q, 1000).unwrap();
        assert_eq!(t.len(), 90);
        for (i, a) in t.iter().enumerate() {
            for b in &t[i + 1..] {
                assert!(!q.contains(&a.mul(&b.inv())));
            }
        }
        assert!(matches!(right_transversal(&a6, &q, 10), Err(Error::Budget { needed: 90, .. })));
    }

    #[test]
    fn key_is_constant_on_cosets() {
        let a5 = PermGroup::alternating(5);
        let h = a5.pointwise_stabilizer(&[0]);
        let x = Perm::cycles(5, &[&[1, 2, 3]]);
        let k = canonical_coset_key(&h, &x);
        for e in h.element_iter() {
            assert_eq!(canonical_coset_key(&h, &e.mul(&x)), k);
        }
    }
}
