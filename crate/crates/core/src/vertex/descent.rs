use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::decomp::{decompose, is_indecomposable_with, DecompOptions};
use crate::error::{Error, Result};
use crate::gmod::{iso_test, GModule};
use crate::perm::{maximal_subgroups_containing, Perm, PermGroup};

use super::higman::is_rel_projective;

/// One level of the maximal-subgroup descent.
#[derive(Clone, Debug, Serialize)]
pub struct DescentStep {
    pub group_order: u128,
    pub module_dim: usize,
    /// Maximal subgroups examined, in hyperplane order.
    pub candidates: usize,
    /// Position of the accepted subgroup, if any.
    pub accepted: Option<usize>,
    pub accepted_generators: Vec<String>,
    /// Dimension of the summand `W` with `ind W ≅ V`.
    pub summand_dim: Option<usize>,
}

/// Vertex and source of an indecomposable module for a 2-group.
#[derive(Clone, Debug)]
pub struct VertexSource {
    pub vertex: PermGroup,
    pub source: GModule,
    pub steps: Vec<DescentStep>,
}

/// Descends through maximal subgroups admitting relative projectivity,
/// replacing `V` by a summand `W` of half the dimension with `ind W ≅ V`.
/// Each index-2 induction counts against `coset_budget`.
pub fn vertex_source_pgroup(v: &GModule, options: &DecompOptions, coset_budget: u128) -> Result<VertexSource> {
    if !v.group().is_two_group() {
        return Err(Error::Domain("descent needs a 2-group".into()));
    }
    if !is_indecomposable_with(v, options.seed, options.enumeration_limit)?.is_local() {
        return Err(Error::Domain(format!("{} is not certified indecomposable", v.label())));
    }
    let mut current = v.clone();
    let mut steps = Vec::new();
    loop {
        let p = current.group_arc().clone();
        if p.is_trivial() {
            return Ok(VertexSource { vertex: (*p).clone(), source: current, steps });
        }
        let maxes = maximal_subgroups_containing(&p, &PermGroup::trivial(p.degree()))?;
        let found = maxes
            .par_iter()
            .enumerate()
            .map(|(i, r)| is_rel_projective(&current, r, coset_budget).map(|rec| (i, rec.projective)))
            .find_map_first(|res| match res {
                Ok((i, true)) => Some(Ok(i)),
                Ok((_, false)) => None,
                Err(e) => Some(Err(e)),
            })
            .transpose()?;
        let mut step = DescentStep {
            group_order: p.order(),
            module_dim: current.dim(),
            candidates: maxes.len(),
            accepted: found,
            accepted_generators: Vec::new(),
            summand_dim: None,
        };
        let Some(i) = found else {
            steps.push(step);
            return Ok(VertexSource { vertex: (*p).clone(), source: current, steps });
        };
        let r = Arc::new(maxes[i].clone());
        step.accepted_generators = r.gens().iter().map(Perm::to_string).collect();
        let res = current.restrict_arc(Arc::clone(&r))?;
        let parts = decompose(&res, options)?;
        let parent = if parts.field_used == current.field() {
            current.clone()
        } else {
            current.extend_scalars(parts.field_used)?
        };
        let mut next = None;
        for w in parts.summands.iter().filter(|w| 2 * w.dim() == parent.dim()) {
            let ind = w.induce(Arc::clone(&p), coset_budget)?;
            if iso_test(&ind, &parent, options.seed)?.is_isomorphic() {
                next = Some(w.clone());
                break;
            }
        }
        let Some(w) = next else {
            return Err(Error::Inconclusive(format!(
                "no summand of the restriction to a maximal subgroup of order {} induces back to the module",
                r.order()
            )));
        };
        step.summand_dim = Some(w.dim());
        steps.push(step);
        current = w;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{natural_modules, degree_six_data, sylow_alt_group, NaturalKind};
    use crate::field::Field;

    #[test]
    fn free_module_has_trivial_vertex() {
        let c2 = Arc::new(PermGroup::new(2, vec![Perm::cycles(2, &[&[1, 2]])]).unwrap());
        let reg = GModule::regular(c2, Field::GF2, 4).unwrap();
        let vs = vertex_source_pgroup(&reg, &DecompOptions::default(), 2).unwrap();
        assert!(vs.vertex.is_trivial());
        assert_eq!(vs.source.dim(), 1);
        assert_eq!(vs.steps[0].summand_dim, Some(1));
    }

    #[test]
    fn degree_six_descends_to_klein_four() {
        let data = degree_six_data().unwrap();
        let nat = natural_modules(6, Field::GF4).unwrap();
        let e = GModule::natural(Arc::new(data.q6.clone()), &nat, NaturalKind::Heart, "E").unwrap();
        let vs = vertex_source_pgroup(&e, &DecompOptions::default(), 2).unwrap();
        assert_eq!(vs.vertex.order(), 4);
        assert_eq!(vs.source.dim(), 2);
        assert_eq!(vs.steps.len(), 2);
    }

    #[test]
    fn heart_on_sylow_at_eight_is_its_own_source() {
        let nat = natural_modules(8, Field::GF2).unwrap();
        let q8 = Arc::new(sylow_alt_group(8).unwrap());
        let e = GModule::natural(Arc::clone(&q8), &nat, NaturalKind::Heart, "E").unwrap();
        let vs = vertex_source_pgroup(&e, &DecompOptions::default(), 2).unwrap();
        assert_eq!(vs.vertex.order(), 64);
        assert_eq!(vs.source.dim(), 6);
        assert_eq!(vs.steps.len(), 1);
        assert_eq!(vs.steps[0].accepted, None);
    }
}
