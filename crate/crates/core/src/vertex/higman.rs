use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Elem;
use crate::gmod::{hom_space, GModule};
use crate::linalg::{Matrix, SpanSolver};
use crate::perm::{right_transversal, Perm, PermGroup};

/// Cosets handled by one worker between reductions.
const CHUNK: usize = 2048;

/// How relative projectivity was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HigmanMethod {
    /// `Tr(1) = [G:H] 1 = 1` because the index is odd.
    OddIndex,
    /// Traces of a basis of `End_{FH}(V)` were computed.
    Trace,
}

/// Evidence for or against `V` being relatively `H`-projective.
#[derive(Clone, Debug, Serialize)]
pub struct HigmanRecord {
    pub subgroup_order: u128,
    pub index: u128,
    pub method: HigmanMethod,
    pub projective: bool,
    pub endo_dim: usize,
    /// Coefficients `c_i` with `Σ c_i Tr(φ_i) = 1`, as field element values.
    pub combination: Option<Vec<u8>>,
    /// FNV-1a hash of the coset chunk boundaries used in the reduction.
    pub chunk_checksum: u64,
}

fn checksum(bounds: impl Iterator<Item = (usize, usize)>) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for (a, b) in bounds {
        for x in [a as u64, b as u64] {
            for byte in x.to_le_bytes() {
                h ^= u64::from(byte);
                h = h.wrapping_mul(0x0100_0000_01b3);
            }
        }
    }
    h
}

/// `Σ_t A_t^-1 φ A_t` for every `φ`, reduced over chunks of the transversal.
pub fn trace_many(v: &GModule, transversal: &[Perm], phis: &[Matrix]) -> Result<(Vec<Matrix>, u64)> {
    let f = v.field();
    let d = v.dim();
    let zero = || vec![Matrix::zeros(f, d, d); phis.len()];
    let partials: Vec<Vec<Matrix>> = transversal
        .par_chunks(CHUNK)
        .map(|chunk| -> Result<Vec<Matrix>> {
            let mut acc = zero();
            for t in chunk {
                let (a, ai) = v.action_pair(t)?;
                for (s, phi) in acc.iter_mut().zip(phis) {
                    s.add_assign(&ai.mul(phi).mul(&a));
                }
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let total = partials.into_iter().fold(zero(), |mut acc, part| {
        for (s, p) in acc.iter_mut().zip(&part) {
            s.add_assign(p);
        }
        acc
    });
    let bounds = (0..transversal.len()).step_by(CHUNK).map(|s| (s, (s + CHUNK).min(transversal.len())));
    Ok((total, checksum(bounds)))
}

/// The relative trace `Tr_H^G(φ)` over a right transversal of `H` in `G`.
pub fn rel_trace(v: &GModule, h: &PermGroup, phi: &Matrix, transversal: &[Perm]) -> Result<Matrix> {
    for g in h.gens() {
        let a = v.action_of(g)?;
        if a.mul(phi) != phi.mul(&a) {
            return Err(Error::Domain("map does not commute with the subgroup".into()));
        }
    }
    Ok(trace_many(v, transversal, std::slice::from_ref(phi))?.0.remove(0))
}

/// Higman's criterion: whether the identity is a relative trace from `H`.
pub fn is_rel_projective(v: &GModule, h: &PermGroup, budget: u128) -> Result<HigmanRecord> {
    let g = v.group();
    if !h.is_subgroup_of(g) {
        return Err(Error::Domain("subgroup is not contained in the acting group".into()));
    }
    let index = g.order() / h.order();
    if index % 2 == 1 {
        return Ok(HigmanRecord {
            subgroup_order: h.order(),
            index,
            method: HigmanMethod::OddIndex,
            projective: true,
            endo_dim: 0,
            combination: None,
            chunk_checksum: 0,
        });
    }
    if index > budget {
        return Err(Error::Budget { what: "relative trace cosets".into(), needed: index, budget });
    }
    let res = v.restrict(h)?;
    let end = hom_space(&res, &res)?;
    let transversal = right_transversal(g, h, budget)?;
    let (traces, chunk_checksum) = trace_many(v, &transversal, end.basis())?;
    let f = v.field();
    let d = v.dim();
    let flat = traces.iter().fold(Matrix::zeros(f, 0, d * d), |acc, t| acc.vstack(&t.flatten()));
    let combination = SpanSolver::new(&flat)
        .solve(&Matrix::identity(f, d).flatten())
        .map(|c| c.into_iter().map(Elem::value).collect());
    Ok(HigmanRecord {
        subgroup_order: h.order(),
        index,
        method: HigmanMethod::Trace,
        projective: combination.is_some(),
        endo_dim: end.dim(),
        combination,
        chunk_checksum,
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::constructions::{natural_modules, degree_six_data, sylow_alt_group, NaturalKind};
    use crate::field::Field;

    fn heart(n: usize, g: PermGroup, field: Field) -> GModule {
        let nat = natural_modules(n, field).unwrap();
        GModule::natural(Arc::new(g), &nat, NaturalKind::Heart, "E").unwrap()
    }

    #[test]
    fn traces_commute_with_the_group() {
        let g = PermGroup::alternating(6);
        let e = heart(6, g.clone(), Field::GF2);
        let data = degree_six_data().unwrap();
        let t = right_transversal(&g, &data.q, 1000).unwrap();
        let res = e.restrict(&data.q).unwrap();
        let end = hom_space(&res, &res).unwrap();
        for phi in end.basis() {
            let tr = rel_trace(&e, &data.q, phi, &t).unwrap();
            for a in e.actions() {
                assert_eq!(a.mul(&tr), tr.mul(a));
            }
        }
        let id = Matrix::identity(Field::GF2, 4);
        assert!(rel_trace(&e, &data.q, &id, &t).unwrap().is_zero());
        let whole = [Perm::identity(6)];
        assert_eq!(rel_trace(&e, &g, &id, &whole).unwrap(), id);
        let mut bad = Matrix::zeros(Field::GF2, 4, 4);
        bad.set(0, 1, Elem::ONE);
        assert!(rel_trace(&e, &data.q, &bad, &t).is_err());
    }

    #[test]
    fn degree_six_relative_projectivity() {
        let data = degree_six_data().unwrap();
        let e = heart(6, PermGroup::alternating(6), Field::GF2);
        assert!(is_rel_projective(&e, &data.q, 1000).unwrap().projective);
        for g in [data.q.gens()[0].clone(), data.q.gens()[1].clone(), data.q.gens()[0].mul(&data.q.gens()[1])] {
            let c2 = PermGroup::new(6, vec![g]).unwrap();
            let rec = is_rel_projective(&e, &c2, 1000).unwrap();
            assert!(!rec.projective);
            assert_eq!(rec.index, 180);
        }
        assert!(matches!(is_rel_projective(&e, &data.q, 10), Err(Error::Budget { .. })));
    }

    #[test]
    fn sylow_subgroups_have_odd_index() {
        let e = heart(10, PermGroup::alternating(10), Field::GF2);
        let rec = is_rel_projective(&e, &sylow_alt_group(10).unwrap(), 1).unwrap();
        assert!(rec.projective);
        assert_eq!(rec.method, HigmanMethod::OddIndex);
    }
}
