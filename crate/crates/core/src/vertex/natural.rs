use std::sync::Arc;

use serde::Serialize;

use crate::constructions::{embedded_alt, natural_modules, degree_six_data, sylow_alt_group, sylow_sym_group, NaturalKind};
use crate::decomp::{decompose, simplicity, DecompOptions, Simplicity, DEFAULT_ENUMERATION_LIMIT};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::gmod::{trivial_summand_test, GModule};
use crate::perm::{conjugacy_witness, ConjugacyOutcome, PermGroup};

use super::descent::{vertex_source_pgroup, DescentStep};
use super::higman::{is_rel_projective, HigmanRecord};

/// Parameters shared by the vertex computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VertexConfig {
    pub field: Field,
    pub seed: u64,
    pub budget_cosets: u128,
    pub budget_elements: u128,
    pub allow_escalation: bool,
    pub enumeration_limit: u64,
}

impl Default for VertexConfig {
    fn default() -> VertexConfig {
        VertexConfig {
            field: Field::GF4,
            seed: 0,
            budget_cosets: 50_000_000,
            budget_elements: 1 << 20,
            allow_escalation: true,
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
        }
    }
}

impl VertexConfig {
    pub fn decomp_options(&self) -> DecompOptions {
        DecompOptions { seed: self.seed, allow_escalation: self.allow_escalation, enumeration_limit: self.enumeration_limit }
    }
}

/// A named pass/fail entry of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

impl Check {
    pub fn new(name: impl Into<String>, ok: bool, details: impl Into<String>) -> Check {
        Check { name: name.into(), status: if ok { Status::Pass } else { Status::Fail }, details: details.into() }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Vertex of one indecomposable summand of the restriction to a Sylow subgroup.
#[derive(Clone, Debug, Serialize)]
pub struct SummandVertex {
    pub dim: usize,
    pub vertex_order: u128,
    pub vertex_generators: Vec<String>,
    pub steps: Vec<DescentStep>,
}

/// The sandwich certificate for the vertex and source of a module.
#[derive(Clone, Debug)]
pub struct VertexReport {
    pub label: String,
    pub module_dim: usize,
    /// Dimensions of the indecomposable summands of the restriction to a Sylow 2-subgroup.
    pub restriction_dims: Vec<usize>,
    pub field_used: Field,
    pub escalated: bool,
    /// The subgroup certified as a vertex.
    pub vertex: PermGroup,
    pub vertex_label: String,
    pub lower_bound: Vec<SummandVertex>,
    pub upper_bound: HigmanRecord,
    pub conjugacy: ConjugacyOutcome,
    pub source: GModule,
    pub trivial_source: bool,
    pub checks: Vec<Check>,
}

impl VertexReport {
    pub fn vertex_order(&self) -> u128 {
        self.vertex.order()
    }

    pub fn source_dim(&self) -> usize {
        self.source.dim()
    }

    pub fn restriction_indecomposable(&self) -> bool {
        self.restriction_dims.len() == 1
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }
}

/// The natural simple module of `A_n`: the heart of the permutation module,
/// or for `n < 5` over a field containing GF(4) one of its two simple summands.
pub fn natural_simple(n: usize, field: Field) -> Result<GModule> {
    let nat = natural_modules(n, field)?;
    let g = Arc::new(PermGroup::alternating(n));
    let heart = GModule::natural(g, &nat, NaturalKind::Heart, format!("E, n={n}"))?;
    if n >= 5 || field.degree() % 2 == 1 {
        return Ok(heart);
    }
    match simplicity(&heart, 0)? {
        Simplicity::Simple => Ok(heart),
        Simplicity::Reducible(sub) => Ok(heart.submodule(sub.basis())?.with_label(format!("E+, n={n}"))),
    }
}

/// The natural simple module `D` of `S_n`.
pub fn natural_simple_sym(n: usize, field: Field) -> Result<GModule> {
    let nat = natural_modules(n, field)?;
    GModule::natural(Arc::new(PermGroup::symmetric(n)), &nat, NaturalKind::Heart, format!("D, n={n}"))
}

/// A Sylow 2-subgroup of `A_n` and the subgroup predicted to be a vertex.
pub fn alternating_candidates(n: usize) -> Result<(PermGroup, PermGroup, String)> {
    let sylow = if n < 4 { PermGroup::trivial(n) } else { sylow_alt_group(n)? };
    let (c, label) = if n % 2 == 1 {
        (embedded_alt(n - 3, n)?, format!("Sylow 2-subgroup of A_{} on points 1..{}", n - 3, n - 3))
    } else if n == 6 {
        (degree_six_data()?.q, "<(1,2)(3,4),(3,4)(5,6)>".to_string())
    } else {
        (sylow.clone(), format!("Sylow 2-subgroup Q_{n} of A_{n}"))
    };
    Ok((sylow, c, label))
}

/// Vertex and source of the natural simple module of `A_n`.
pub fn vertex_of_natural_simple(n: usize, config: &VertexConfig) -> Result<VertexReport> {
    if n < 3 {
        return Err(Error::Domain(format!("degree {n} is below 3")));
    }
    let e = natural_simple(n, config.field)?;
    let (sylow, c, label) = alternating_candidates(n)?;
    sandwich(&e, sylow, c, label, config)
}

/// Vertex and source of `D` for `S_n`, with `P_n` as candidate.
pub fn vertex_of_natural_simple_sym(n: usize, config: &VertexConfig) -> Result<VertexReport> {
    if n < 3 {
        return Err(Error::Domain(format!("degree {n} is below 3")));
    }
    let d = natural_simple_sym(n, config.field)?;
    let p = sylow_sym_group(n)?;
    sandwich(&d, p.clone(), p, format!("Sylow 2-subgroup P_{n} of S_{n}"), config)
}

/// Lower bound from the vertices of the summands of `res_P V`, upper bound
/// from Higman's criterion at `candidate`, and a source among the summands
/// of `res_candidate V` with full vertex.
pub fn sandwich(
    v: &GModule,
    sylow: PermGroup,
    candidate: PermGroup,
    vertex_label: String,
    config: &VertexConfig,
) -> Result<VertexReport> {
    let options = config.decomp_options();
    let g = v.group();
    let mut checks = Vec::new();

    let res = v.restrict(&sylow)?;
    let parts = decompose(&res, &options)?;
    checks.push(Check::new(
        "restriction_certificate_replay",
        parts.replay(),
        format!("summand dims {:?} over GF(2^{})", parts.dims(), parts.field_used.degree()),
    ));
    let mut lower = Vec::new();
    let mut lower_vertex: Option<PermGroup> = None;
    let mut full_sources = Vec::new();
    for w in &parts.summands {
        let vs = vertex_source_pgroup(w, &options, config.budget_cosets)?;
        let order = vs.vertex.order();
        lower.push(SummandVertex {
            dim: w.dim(),
            vertex_order: order,
            vertex_generators: vs.vertex.gens().iter().map(ToString::to_string).collect(),
            steps: vs.steps.clone(),
        });
        if lower_vertex.as_ref().is_none_or(|l| order > l.order()) {
            lower_vertex = Some(vs.vertex.clone());
        }
        if order == candidate.order() && vs.vertex.same_group(&candidate) {
            full_sources.push(vs.source);
        }
    }
    let lower_vertex = lower_vertex.unwrap_or_else(|| PermGroup::trivial(g.degree()));

    let upper = is_rel_projective(v, &candidate, config.budget_cosets)?;
    checks.push(Check::new(
        "higman_upper_bound",
        upper.projective,
        format!("index {} via {:?}", upper.index, upper.method),
    ));
    checks.push(Check::new(
        "bounds_agree",
        lower_vertex.order() == candidate.order(),
        format!("lower {} vs candidate {}", lower_vertex.order(), candidate.order()),
    ));

    let conjugacy = conjugacy_witness(g, &lower_vertex, &candidate, config.budget_elements)?;
    checks.push(Check::new(
        "vertex_conjugacy",
        !matches!(conjugacy, ConjugacyOutcome::NotConjugate { .. }),
        format!("{}", conjugacy.mode()),
    ));

    let res_c = v.restrict(&candidate)?;
    let trivial_source = candidate.is_two_group() && trivial_summand_test(&res_c)?;
    let source = if trivial_source {
        GModule::trivial(Arc::new(candidate.clone()), parts.field_used)
    } else if let Some(s) = full_sources.into_iter().next() {
        s
    } else {
        source_with_full_vertex(&res_c, &candidate, &options, config.budget_cosets)?
    };
    checks.push(Check::new(
        "source_found",
        true,
        format!("dim {}{}", source.dim(), if trivial_source { ", trivial" } else { "" }),
    ));

    Ok(VertexReport {
        label: v.label().to_string(),
        module_dim: v.dim(),
        restriction_dims: parts.dims(),
        field_used: parts.field_used,
        escalated: parts.escalated,
        vertex: candidate,
        vertex_label,
        lower_bound: lower,
        upper_bound: upper,
        conjugacy,
        source,
        trivial_source,
        checks,
    })
}

fn source_with_full_vertex(
    res_c: &GModule,
    candidate: &PermGroup,
    options: &DecompOptions,
    budget: u128,
) -> Result<GModule> {
    let parts = decompose(res_c, options)?;
    for w in &parts.summands {
        let vs = vertex_source_pgroup(w, options, budget)?;
        if vs.vertex.order() == candidate.order() {
            return Ok(vs.source);
        }
    }
    Err(Error::Inconclusive("no summand of the restriction to the candidate has full vertex".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_degrees() {
        let cfg = VertexConfig::default();
        for (n, order, dim, trivial) in [(3usize, 1u128, 1usize, true), (4, 4, 1, true), (5, 1, 1, true), (6, 4, 2, false)] {
            let r = vertex_of_natural_simple(n, &cfg).unwrap();
            assert!(r.all_pass(), "n = {n}: {:?}", r.checks);
            assert_eq!((r.vertex_order(), r.source_dim(), r.trivial_source), (order, dim, trivial), "n = {n}");
        }
    }
}
