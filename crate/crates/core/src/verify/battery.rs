use std::sync::Arc;

use crate::constructions::{
    embedded_alt, split_summand_bases, named_subgroups, natural_modules, sym_endomorphism_basis, endo_case_subgroups,
    degree_six_data, top_quotient_image, CaseTag, NamedSubgroups, NaturalKind, NaturalModules,
};
use crate::decomp::{
    composition_factor_dims, decompose, is_indecomposable_with, is_simple, locality_of, nilpotent_radical,
    DecompOptions, LocalityCertificate,
};
use crate::error::Result;
use crate::field::{Elem, Field};
use crate::gmod::{endo_algebra, hom_space, iso_test, norm_operator, socle_pgroup, GModule, IsoOutcome};
use crate::linalg::{left_kernel, Matrix, Subspace};
use crate::perm::{maximal_subgroups_containing, Perm, PermGroup};
use crate::vertex::{
    is_rel_projective, natural_simple, vertex_of_natural_simple_sym, vertex_source_pgroup, Check, VertexSource,
};

use super::config::Config;

fn heart(nat: &NaturalModules, group: PermGroup, label: &str) -> Result<GModule> {
    GModule::natural(Arc::new(group), nat, NaturalKind::Heart, label)
}

/// Whether `sub` is exactly the span of the rows of `rows`.
fn spans(sub: &Subspace, rows: &Matrix) -> bool {
    sub.dim() == rows.rank() && sub.contains_rows(rows)
}

fn stack(rows: &[Matrix]) -> Matrix {
    rows[1..].iter().fold(rows[0].clone(), |acc, r| acc.vstack(r))
}

fn local(cert: &LocalityCertificate) -> (bool, String) {
    match cert {
        LocalityCertificate::Local { residue_degree } => (true, format!("local, residue degree {residue_degree}")),
        LocalityCertificate::Splits { .. } => (false, "nontrivial idempotent found".into()),
        LocalityCertificate::Unknown { reason } => (false, format!("unknown: {reason}")),
    }
}

/// The permutation module `M > M' > M'' > 0` and the simplicity of `D` and `E`.
pub fn module_structure_checks(n: usize, config: &Config) -> Result<Vec<Check>> {
    let field = config.field()?;
    let nat = natural_modules(n, field)?;
    let sym = Arc::new(PermGroup::symmetric(n));
    let m = GModule::natural(Arc::clone(&sym), &nat, NaturalKind::Permutation, "M")?;
    let aug = GModule::natural(Arc::clone(&sym), &nat, NaturalKind::Augmentation, "M'")?;
    let d = GModule::natural(Arc::clone(&sym), &nat, NaturalKind::Heart, "D")?;
    let one = GModule::trivial(Arc::clone(&sym), field);
    let mut factors = composition_factor_dims(&m, config.seed)?;
    let mut checks = Vec::new();
    if n.is_multiple_of(2) {
        checks.push(Check::new("permutation_module_factors", factors == [1, n - 2, 1], format!("{factors:?} bottom-up")));
        let homs = [
            hom_space(&one, &m)?.dim(),
            hom_space(&m, &one)?.dim(),
            hom_space(&d, &m)?.dim(),
            hom_space(&m, &d)?.dim(),
        ];
        checks.push(Check::new(
            "permutation_module_uniserial",
            homs == [1, 1, 0, 0],
            format!("dim Hom(F,M), Hom(M,F), Hom(D,M), Hom(M,D) = {homs:?}"),
        ));
    } else {
        factors.sort_unstable();
        checks.push(Check::new("permutation_module_factors", factors == [1, n - 1], format!("{factors:?}")));
        let split = iso_test(&m, &one.direct_sum(&aug)?, config.seed)?.is_isomorphic();
        checks.push(Check::new("permutation_module_splits", split, "M ≅ F + M'"));
    }
    let dims_ok = aug.dim() == n - 1 && d.dim() == if n.is_multiple_of(2) { n - 2 } else { n - 1 };
    checks.push(Check::new("heart_dimension", dims_ok, format!("dim M' = {}, dim D = {}", aug.dim(), d.dim())));
    checks.push(Check::new("heart_simple_for_sn", is_simple(&d, config.seed)?, format!("D of dim {}", d.dim())));
    let e = natural_simple(n, field)?;
    checks.push(Check::new("natural_simple_for_an", is_simple(&e, config.seed)?, format!("E of dim {}", e.dim())));
    Ok(checks)
}

/// The battery for the case tag of `n`.
pub fn case_checks(n: usize, tag: CaseTag, config: &Config) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    if n.is_multiple_of(2) && n >= 6 && tag != CaseTag::TwoPower {
        checks.extend(abelian_restriction_checks(n, config)?);
    }
    match tag {
        CaseTag::TwoPower => checks.extend(two_power_checks(n, config)?),
        CaseTag::NlGt2 => checks.extend(nl_gt2_checks(n, config)?),
        CaseTag::Nl2Lge4 => checks.extend(nl2_lge4_checks(n, config)?),
        CaseTag::Nl2L3 => checks.extend(nl2_l3_checks(n, config)?),
        CaseTag::Nl2L2 => checks.extend(nl2_l2_checks(n, config)?),
        CaseTag::N6 => checks.extend(degree_six_checks(config)?),
        CaseTag::N3 | CaseTag::N4 | CaseTag::Odd => {}
    }
    Ok(checks)
}

/// Maximal subgroups of `Q_n` containing `Φ(Q_n)` and `Q_{n-4}`.
fn strategy_maximals(s: &NamedSubgroups) -> Result<Vec<PermGroup>> {
    let n = s.n();
    let floor = s.phi_q.join(embedded_alt(n - 4, n)?.gens());
    maximal_subgroups_containing(&s.q, &floor)
}

fn same_set(found: &[PermGroup], expected: &[PermGroup]) -> bool {
    found.len() == expected.len() && expected.iter().all(|e| found.iter().any(|f| f.same_group(e)))
}

fn two_power_checks(n: usize, config: &Config) -> Result<Vec<Check>> {
    let field = config.field()?;
    let s = named_subgroups(n)?;
    let maxes = strategy_maximals(&s)?;
    let expected = if n == 8 {
        let q4 = embedded_alt(4, 8)?;
        let mut gens: Vec<Perm> = q4.gens().to_vec();
        gens.extend(q4.gens().iter().map(|g| g.shift(0, 8).conj(&Perm::cycles(8, &[&[1, 5], &[2, 6], &[3, 7], &[4, 8]]))));
        let base = PermGroup::new(8, gens)?;
        let w8 = Perm::cycles(8, &[&[1, 5], &[2, 6], &[3, 7], &[4, 8]]);
        let w2 = Perm::cycles(8, &[&[1, 2]]);
        vec![s.b_alt.clone(), base.join(std::slice::from_ref(&w8)), base.join(&[w8.conj(&w2)])]
    } else {
        vec![s.b_alt.clone()]
    };
    let mut checks = vec![Check::new(
        "admissible_maximal_subgroups",
        same_set(&maxes, &expected),
        format!("{} maximal subgroups of Q_{n} contain Phi(Q_{n}) Q_{}", maxes.len(), n - 4),
    )];
    let nat = natural_modules(n, field)?;
    let x = PermGroup::new(n, vec![s.xs[0].clone()])?;
    let e_x = heart(&nat, x, "E on X")?;
    let dims = decompose(&e_x, &config.decomp_options())?.dims();
    let half = (n - 2) / 2;
    checks.push(Check::new("cyclic_restriction_halves", dims == [half, half], format!("summand dims {dims:?}")));
    Ok(checks)
}

/// Socles of the restriction to `Y'_n` and kernels and images of `y'^+` and `x^+`.
fn abelian_restriction_checks(n: usize, config: &Config) -> Result<Vec<Check>> {
    let field = config.field()?;
    let s = named_subgroups(n)?;
    let p = &s.profile;
    let l = p.l();
    let nat = natural_modules(n, field)?;
    let dv = nat.distinguished();
    let bar = |v: &Matrix| nat.to_heart(v);
    let e_y = heart(&nat, s.y_alt.clone(), "E on Y'")?;
    let soc = socle_pgroup(&e_y)?;
    let mut checks = Vec::new();
    if l > 2 {
        let rows = stack(&(0..l - 1).map(|j| bar(&dv.block[j])).collect::<Result<Vec<_>>>()?);
        checks.push(Check::new(
            "socle_on_y_alt",
            spans(&soc, &rows),
            format!("dim {}, expected the block sums 1..{}", soc.dim(), l - 1),
        ));
    } else if p.last_part() > 2 {
        let rows = bar(&dv.zero)?.vstack(&bar(&dv.block[0])?);
        checks.push(Check::new("socle_on_y_alt", spans(&soc, &rows), format!("dim {}, expected delta_0+ and delta_1+", soc.dim())));
    } else {
        let y = Arc::new(s.y_alt.clone());
        let reg = GModule::regular(Arc::clone(&y), field, config.budgets.elements)?;
        let iso = iso_test(&e_y, &reg, config.seed)?.is_isomorphic();
        let ok = iso && spans(&soc, &bar(&dv.block[0])?);
        checks.push(Check::new("socle_on_y_alt", ok, format!("regular: {iso}, socle dim {}", soc.dim())));
    }

    let e_q = heart(&nat, s.q.clone(), "E on Q")?;
    let d = e_q.dim();
    let mut y_ok = true;
    let mut y_details = Vec::new();
    for j in 0..l {
        let norm = norm_operator(&e_q, &s.y_alts[j])?;
        let k = left_kernel(&norm).dim();
        let image = Subspace::from_rows(&norm);
        let ok = if j + 1 < l {
            k == d - 1 && spans(&image, &bar(&dv.block[j])?)
        } else if p.last_part() > 2 {
            k == d - 2 && spans(&image, &bar(&dv.first_half[j])?.vstack(&bar(&dv.second_half[j])?))
        } else {
            k == 0 && norm.is_identity()
        };
        y_ok &= ok;
        y_details.push(format!("j={}: ker {k}", j + 1));
    }
    checks.push(Check::new("norm_kernels_y_alt", y_ok, format!("dim D = {d}; {}", y_details.join(", "))));

    let mut x_ok = true;
    let mut x_details = Vec::new();
    for j in (0..l).filter(|&j| p.parts()[j] > 2) {
        let norm = norm_operator(&e_q, &s.xs[j])?;
        let k = left_kernel(&norm).dim();
        let image = Subspace::from_rows(&norm);
        x_ok &= k == d - 2 && spans(&image, &bar(&dv.first_half[j])?.vstack(&bar(&dv.second_half[j])?));
        x_details.push(format!("j={}: ker {k}", j + 1));
    }
    checks.push(Check::new("norm_kernels_x", x_ok, format!("dim D = {d}; {}", x_details.join(", "))));
    Ok(checks)
}

fn nl_gt2_checks(n: usize, config: &Config) -> Result<Vec<Check>> {
    let field = config.field()?;
    let s = named_subgroups(n)?;
    let swaps = (0..s.profile.l()).map(|j| top_quotient_image(&s.q, j, &s.profile)).collect::<Result<Vec<_>>>()?;
    let nat = natural_modules(n, field)?;
    let dv = nat.distinguished();
    let e_x = heart(&nat, s.x.clone(), "E on X")?;
    let soc = socle_pgroup(&e_x)?;
    let mut rows = Vec::new();
    for j in 0..s.profile.l() {
        rows.push(nat.to_heart(&dv.first_half[j])?);
        rows.push(nat.to_heart(&dv.second_half[j])?);
    }
    Ok(vec![
        Check::new("half_swaps_in_q", swaps.iter().all(|&b| b), format!("{swaps:?}")),
        Check::new("socle_on_x", spans(&soc, &stack(&rows)), format!("dim {}", soc.dim())),
    ])
}

fn nl2_lge4_checks(n: usize, config: &Config) -> Result<Vec<Check>> {
    let s = named_subgroups(n)?;
    let nat = natural_modules(n, config.field()?)?;
    let e_y = heart(&nat, s.y_alt.clone(), "E on Y'")?;
    let cert = is_indecomposable_with(&e_y, config.seed, config.budgets.enumeration)?;
    let (ok, details) = local(&cert);
    Ok(vec![Check::new("y_alt_restriction_indecomposable", ok, details)])
}

/// The two summands of `res_{Y'} E` for profiles `n_1 + n_2 + 2`, in the
/// order of the given bases, with their vertices.
pub fn split_summands(n: usize, config: &Config) -> Result<Vec<(GModule, VertexSource)>> {
    let field = config.field()?;
    let s = named_subgroups(n)?;
    let nat = natural_modules(n, field)?;
    let e_y = heart(&nat, s.y_alt.clone(), "E on Y'")?;
    let (b1, b2) = split_summand_bases(n, field)?;
    let mut out = Vec::new();
    for (i, b) in [b1, b2].iter().enumerate() {
        let u = e_y.submodule(&nat.to_heart(b)?)?.with_label(format!("U_{}", i + 1));
        let vs = vertex_source_pgroup(&u, &config.decomp_options(), config.budgets.cosets)?;
        out.push((u, vs));
    }
    Ok(out)
}

fn nl2_l3_checks(n: usize, config: &Config) -> Result<Vec<Check>> {
    let field = config.field()?;
    let s = named_subgroups(n)?;
    let (n1, n2) = (s.profile.parts()[0], s.profile.parts()[1]);
    let nat = natural_modules(n, field)?;
    let (b1, b2) = split_summand_bases(n, field)?;
    let direct = nat.to_heart(&b1)?.vstack(&nat.to_heart(&b2)?).rank() == n - 2;
    let parts = split_summands(n, config)?;
    let dims: Vec<usize> = parts.iter().map(|(u, _)| u.dim()).collect();
    let mut checks = vec![Check::new(
        "summand_bases_split",
        direct && dims == [n1, n2],
        format!("submodule dims {dims:?}, direct: {direct}"),
    )];
    for (u, vs) in &parts {
        let first = vs.steps.first().map_or(0, |st| st.candidates);
        checks.push(Check::new(
            format!("{}_vertex_is_y_alt", u.label()),
            vs.vertex.same_group(&s.y_alt),
            format!("dim {}, vertex order {}, {} maximal subgroups tested", u.dim(), vs.vertex.order(), first),
        ));
    }
    let e_y = heart(&nat, s.y_alt.clone(), "E on Y'")?;
    let mut found = decompose(&e_y, &config.decomp_options())?.dims();
    found.sort_unstable();
    let mut expected = vec![n1, n2];
    expected.sort_unstable();
    checks.push(Check::new("y_alt_decomposition", found == expected, format!("{found:?}")));
    Ok(checks)
}

/// The endomorphism algebras of `E` over `H'` and `A_k x A_k`, and the three
/// maximal subgroups of `Q_n` over `B'_n`.
fn nl2_l2_checks(n: usize, config: &Config) -> Result<Vec<Check>> {
    let field = config.field()?;
    let s = named_subgroups(n)?;
    let g = endo_case_subgroups(n)?;
    let nat = natural_modules(n, field)?;
    let mut checks = Vec::new();

    let e_h = heart(&nat, g.h_alt.clone(), "E on H'")?;
    let end = endo_algebra(&e_h)?;
    let rad = nilpotent_radical(&end)?;
    let (is_local, how) = local(&locality_of(&end, config.seed, config.budgets.enumeration)?);
    checks.push(Check::new(
        "endomorphisms_over_h_alt",
        end.dim() == 5 && rad.dim() == 4 && end.is_commutative() && is_local,
        format!("dim {}, radical dim {}, commutative {}, {how}", end.dim(), rad.dim(), end.is_commutative()),
    ));

    let e_aa = heart(&nat, g.base_alt.clone(), "E on A x A")?;
    let space = hom_space(&e_aa, &e_aa)?;
    let phis = sym_endomorphism_basis(n, field)?;
    let in_space = phis.iter().all(|p| space.coordinates(p).is_some());
    let flat = stack(&phis.iter().map(Matrix::flatten).collect::<Vec<_>>());
    checks.push(Check::new(
        "endomorphisms_over_alternating_halves",
        space.dim() == 6 && in_space && flat.rank() == 6,
        format!("dim {}, listed basis inside: {in_space}", space.dim()),
    ));
    let (table_ok, bad) = endo_table_matches(&phis);
    checks.push(Check::new("endomorphism_table", table_ok, format!("mismatched products {bad:?}")));

    let maxes = maximal_subgroups_containing(&s.q, &s.b_alt)?;
    checks.push(Check::new(
        "maximal_subgroups_over_base",
        same_set(&maxes, &g.r_alt),
        format!("{} maximal subgroups of Q_{n} contain B'_{n}", maxes.len()),
    ));
    for (i, r) in g.r_alt.iter().take(2).enumerate() {
        let e_r = heart(&nat, r.clone(), "E on R'")?;
        let (ok, how) = local(&is_indecomposable_with(&e_r, config.seed, config.budgets.enumeration)?);
        checks.push(Check::new(format!("r{}_alt_restriction_indecomposable", i + 1), ok, how));
    }
    Ok(checks)
}

/// `φ_a φ_b` against the listed products, with everything unlisted zero.
pub fn endo_table_matches(phis: &[Matrix]) -> (bool, Vec<(usize, usize)>) {
    let listed = [
        ((1, 1), 1),
        ((1, 3), 3),
        ((3, 1), 3),
        ((6, 1), 6),
        ((2, 6), 6),
        ((2, 2), 2),
        ((2, 4), 4),
        ((4, 2), 4),
        ((5, 2), 5),
        ((1, 5), 5),
    ];
    let mut bad = Vec::new();
    for a in 1..=phis.len() {
        for b in 1..=phis.len() {
            let product = phis[a - 1].mul(&phis[b - 1]);
            let ok = match listed.iter().find(|(ab, _)| *ab == (a, b)) {
                Some((_, c)) => product == phis[c - 1],
                None => product.is_zero(),
            };
            if !ok {
                bad.push((a, b));
            }
        }
    }
    (bad.is_empty(), bad)
}

/// The degree-6 splitting over GF(4), the residue field over GF(2) and
/// Higman's criterion for `Q` and its subgroups of order 2.
fn degree_six_checks(config: &Config) -> Result<Vec<Check>> {
    let data = degree_six_data()?;
    let mut checks = Vec::new();

    let nat2 = natural_modules(6, Field::GF2)?;
    let e2 = heart(&nat2, data.q.clone(), "E on Q over GF(2)")?;
    let cert = is_indecomposable_with(&e2, config.seed, config.budgets.enumeration)?;
    let ok = matches!(cert, LocalityCertificate::Local { residue_degree: 2 });
    checks.push(Check::new("residue_degree_over_gf2", ok, local(&cert).1));

    let nat4 = natural_modules(6, data.field)?;
    let e4 = heart(&nat4, data.q.clone(), "E on Q over GF(4)")?;
    let options = DecompOptions { allow_escalation: false, ..config.decomp_options() };
    let dims = decompose(&e4, &options)?.dims();
    let u = e4.submodule(&data.u_basis)?;
    let v = e4.submodule(&data.v_basis)?;
    let direct = data.u_basis.vstack(&data.v_basis).rank() == 4;
    let soc_u = socle_pgroup(&u)?.dim();
    checks.push(Check::new(
        "splitting_over_gf4",
        dims == [2, 2] && direct && u.dim() == 2 && v.dim() == 2 && soc_u == 1,
        format!("summand dims {dims:?}, U + V direct: {direct}, dim Soc(U) = {soc_u}"),
    ));
    let w = data.field.generator();
    let w2 = data.field.mul(w, w);
    let (o, z) = (w, Elem::ZERO);
    let listed = Matrix::from_fn(data.field, 4, 4, |i, j| {
        [[o, w2, z, z], [w2, o, z, z], [z, z, w2, o], [z, z, o, w2]][i][j]
    });
    checks.push(Check::new(
        "adapted_matrices",
        data.adapted[2] == listed && data.adapted[0] == data.actions[0] && data.adapted[1] == data.actions[1],
        "action of (3,4)(5,6) on u_1, u_2, v_1, v_2",
    ));

    let e6 = heart(&nat4, data.q6.clone(), "E on Q_6")?;
    let ind = u.induce(Arc::new(data.q6.clone()), config.budgets.cosets)?;
    let (ok, details) = match iso_test(&ind, &e6, config.seed)? {
        IsoOutcome::Isomorphic(x) => {
            let intertwines = ind.actions().iter().zip(e6.actions()).all(|(a, b)| a.mul(&x) == x.mul(b));
            (intertwines && x.is_invertible(), "explicit intertwiner verified".to_string())
        }
        other => (false, format!("{other:?}")),
    };
    checks.push(Check::new("induced_source", ok, details));

    let e = natural_simple(6, data.field)?;
    let on_q = is_rel_projective(&e, &data.q, config.budgets.cosets)?;
    let mut smaller = Vec::new();
    let (a, b) = (&data.q.gens()[0], &data.q.gens()[1]);
    for g in [a.clone(), b.clone(), a.mul(b)] {
        let c = PermGroup::new(6, vec![g])?;
        smaller.push(is_rel_projective(&e, &c, config.budgets.cosets)?.projective);
    }
    checks.push(Check::new(
        "higman_on_q_and_subgroups",
        on_q.projective && smaller.iter().all(|&p| !p),
        format!("Q: {}, order-2 subgroups: {smaller:?}", on_q.projective),
    ));
    Ok(checks)
}

/// Vertex and source of `D` for `S_n`, and for profiles `n_1 + 2` the three
/// maximal subgroups of `P_n` containing `B_n`.
pub fn symmetric_checks(n: usize, config: &Config) -> Result<Vec<Check>> {
    let field = config.field()?;
    let report = vertex_of_natural_simple_sym(n, &config.vertex_config()?)?;
    let mut checks: Vec<Check> = report
        .checks
        .iter()
        .map(|c| Check { name: format!("sym_{}", c.name), ..c.clone() })
        .collect();
    let s = named_subgroups(n)?;
    checks.push(Check::new(
        "sym_vertex_is_sylow",
        report.vertex.same_group(&s.p) && report.lower_bound.iter().any(|v| v.vertex_order == s.p.order()),
        format!("vertex order {}, |P_{n}| = {}", report.vertex_order(), s.p.order()),
    ));
    checks.push(Check::new(
        "sym_source_is_restriction",
        report.restriction_indecomposable() && report.source_dim() == n - 2 && !report.trivial_source,
        format!("restriction dims {:?}, source dim {}", report.restriction_dims, report.source_dim()),
    ));
    if s.profile.l() == 2 && s.profile.last_part() == 2 {
        let g = endo_case_subgroups(n)?;
        let nat = natural_modules(n, field)?;
        let maxes = maximal_subgroups_containing(&s.p, &s.b)?;
        checks.push(Check::new(
            "sym_maximal_subgroups_over_base",
            same_set(&maxes, &g.r),
            format!("{} maximal subgroups of P_{n} contain B_{n}", maxes.len()),
        ));
        let cross = g.r.iter().zip(&g.r_alt).all(|(r, ra)| r.even_part().same_group(ra));
        checks.push(Check::new("sym_alternating_parts", cross, "R_i ∩ A_n = R'_i for i = 1, 2, 3"));
        for (i, r) in g.r.iter().take(2).enumerate() {
            let d_r = heart(&nat, r.clone(), "D on R")?;
            let (ok, how) = local(&is_indecomposable_with(&d_r, config.seed, config.budgets.enumeration)?);
            checks.push(Check::new(format!("sym_r{}_restriction_indecomposable", i + 1), ok, how));
        }
        let d_h = heart(&nat, g.h.clone(), "D on H")?;
        let end = endo_algebra(&d_h)?;
        let (ok, how) = local(&locality_of(&end, config.seed, config.budgets.enumeration)?);
        checks.push(Check::new("sym_endomorphisms_over_h_local", ok, format!("dim {}, {how}", end.dim())));
    }
    Ok(checks)
}
