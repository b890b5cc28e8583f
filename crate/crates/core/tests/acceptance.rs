//! The acceptance table, one PASS/FAIL line per criterion.

use std::sync::Arc;
use std::time::Instant;

use altvertex::constructions::{named_subgroups, natural_modules, sym_endomorphism_basis, endo_case_subgroups, NaturalKind};
use altvertex::decomp::{decompose, is_indecomposable_with, nilpotent_radical, DecompOptions};
use altvertex::gmod::{endo_algebra, hom_space, iso_test, GModule};
use altvertex::linalg::Matrix;
use altvertex::perm::PermGroup;
use altvertex::verify::oracles::{idempotent_oracle_suite, linalg_oracle_suite};
use altvertex::verify::{
    case_checks, endo_table_matches, split_summands, symmetric_checks, sylow_identity_checks, verify_n, Config,
    ReportRow,
};
use altvertex::vertex::{vertex_source_pgroup, Check};
use altvertex::{Field, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Result<Outcome>);

struct Outcome {
    ok: bool,
    details: Vec<String>,
}

impl Outcome {
    fn new() -> Outcome {
        Outcome { ok: true, details: Vec::new() }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.ok = false;
            self.details.push(what.into());
        }
    }

    fn require_checks(&mut self, checks: &[Check], names: &[&str], context: &str) {
        for name in names {
            match checks.iter().find(|c| c.name == *name) {
                Some(c) => self.require(c.passed(), format!("{context}: {name}: {}", c.details)),
                None => self.require(false, format!("{context}: {name} missing")),
            }
        }
    }
}

fn config() -> Config {
    Config { normalize_timings: true, ..Config::default() }
}

fn heart(n: usize, group: PermGroup, field: Field) -> Result<GModule> {
    GModule::natural(Arc::new(group), &natural_modules(n, field)?, NaturalKind::Heart, "E")
}

/// Vertex order, vertex identification, source dimension and trivial-source
/// flag for n = 3..12.
fn vertex_table() -> Result<Outcome> {
    let expected: [(usize, u128, &str, usize, bool); 10] = [
        (3, 1, "trivial group", 1, true),
        (4, 4, "Sylow 2-subgroup of A_4", 1, true),
        (5, 1, "trivial group", 1, true),
        (6, 4, "<(1,2)(3,4),(3,4)(5,6)>", 2, false),
        (7, 4, "Sylow 2-subgroup of A_4", 1, true),
        (8, 64, "Q_8", 6, false),
        (9, 8, "Sylow 2-subgroup of A_6", 1, true),
        (10, 128, "Q_10", 8, false),
        (11, 64, "Sylow 2-subgroup of A_8", 1, true),
        (12, 512, "Q_12", 10, false),
    ];
    let mut out = Outcome::new();
    for (n, order, description, source_dim, trivial) in expected {
        let row = verify_n(n, &config())?;
        let failed: Vec<&str> = row.failed_checks().map(|c| c.name.as_str()).collect();
        out.require(row.all_pass(), format!("n={n}: failed {failed:?}"));
        let v = row.vertex.as_ref();
        let s = row.source.as_ref();
        let got = (v.map(|v| v.order), v.map(|v| v.expected.description.as_str()), s.map(|s| s.dim), s.map(|s| s.trivial));
        out.require(
            got == (Some(order), Some(description), Some(source_dim), Some(trivial)),
            format!("n={n}: got {got:?}"),
        );
        out.require_checks(&row.checks, &["vertex_identified"], &format!("n={n}"));
    }
    Ok(out)
}

/// `res_{Q_n} E` is indecomposable and no maximal subgroup of `Q_n` admits
/// relative projectivity.
fn two_group_extension() -> Result<Outcome> {
    let mut out = Outcome::new();
    let options = DecompOptions::default();
    for n in [14, 16, 22, 30] {
        let q = named_subgroups(n)?.q;
        let e = heart(n, q.clone(), Field::GF2)?;
        let local = is_indecomposable_with(&e, 0, 1 << 20)?.is_local();
        out.require(local, format!("n={n}: restriction not certified indecomposable"));
        let vs = vertex_source_pgroup(&e, &options, 50_000_000)?;
        let rejected = vs.steps.first().is_some_and(|s| s.accepted.is_none());
        out.require(vs.vertex.same_group(&q) && rejected, format!("n={n}: vertex order {}", vs.vertex.order()));
    }
    Ok(out)
}

fn endomorphisms_at_ten() -> Result<Outcome> {
    let mut out = Outcome::new();
    let g = endo_case_subgroups(10)?;
    let end = endo_algebra(&heart(10, g.h_alt.clone(), Field::GF2)?)?;
    let rad = nilpotent_radical(&end)?.dim();
    out.require(end.dim() == 5 && rad == 4, format!("End over H' has dim {}, radical {rad}", end.dim()));
    let e = heart(10, g.base_alt.clone(), Field::GF2)?;
    let space = hom_space(&e, &e)?;
    out.require(space.dim() == 6, format!("End over A_4 x A_4 has dim {}", space.dim()));
    let phis = sym_endomorphism_basis(10, Field::GF2)?;
    let (ok, bad) = endo_table_matches(&phis);
    out.require(ok, format!("products {bad:?} disagree with the table"));
    out.require(phis[0].mul(&phis[2]) == phis[2] && phis[4].mul(&phis[1]) == phis[4], "phi1 phi3 or phi5 phi2");
    Ok(out)
}

fn case_battery(n: usize, names: &[&str]) -> Result<Outcome> {
    let mut out = Outcome::new();
    let row: ReportRow = verify_n(n, &config())?;
    out.require_checks(&row.checks, names, &format!("n={n}"));
    let direct = case_checks(n, row.case, &config())?;
    out.require_checks(&direct, names, &format!("n={n} direct"));
    Ok(out)
}

fn socles() -> Result<Outcome> {
    let mut out = Outcome::new();
    for n in [10, 12, 14] {
        let o = case_battery(n, &["socle_on_y_alt"])?;
        out.ok &= o.ok;
        out.details.extend(o.details);
    }
    Ok(out)
}

fn kernels() -> Result<Outcome> {
    let mut out = Outcome::new();
    for n in [12, 14] {
        let o = case_battery(n, &["norm_kernels_y_alt", "norm_kernels_x"])?;
        out.ok &= o.ok;
        out.details.extend(o.details);
    }
    Ok(out)
}

fn y_alt_summands() -> Result<Outcome> {
    let mut out = Outcome::new();
    let y = named_subgroups(14)?.y_alt;
    let parts = split_summands(14, &config())?;
    let dims: Vec<usize> = parts.iter().map(|(u, _)| u.dim()).collect();
    out.require(dims == [8, 4], format!("dims {dims:?}"));
    for (u, vs) in &parts {
        out.require(vs.vertex.same_group(&y) && vs.vertex.order() == 32, format!("{}: vertex order {}", u.label(), vs.vertex.order()));
        let tested = vs.steps.first().map(|s| s.candidates);
        out.require(tested == Some(3), format!("{}: {tested:?} maximal subgroups tested", u.label()));
    }
    Ok(out)
}

fn degree_six() -> Result<Outcome> {
    case_battery(6, &["residue_degree_over_gf2", "splitting_over_gf4", "induced_source", "higman_on_q_and_subgroups"])
}

fn symmetric() -> Result<Outcome> {
    let mut out = Outcome::new();
    let cfg = Config { include_sn: true, ..config() };
    for n in [6, 10, 12, 14] {
        let checks = symmetric_checks(n, &cfg)?;
        let mut names = vec!["sym_vertex_is_sylow", "sym_source_is_restriction", "sym_higman_upper_bound"];
        if n == 10 {
            names.extend([
                "sym_maximal_subgroups_over_base",
                "sym_alternating_parts",
                "sym_r1_restriction_indecomposable",
                "sym_r2_restriction_indecomposable",
                "sym_endomorphisms_over_h_local",
            ]);
        }
        out.require_checks(&checks, &names, &format!("n={n}"));
        let failed: Vec<&str> = checks.iter().filter(|c| !c.passed()).map(|c| c.name.as_str()).collect();
        out.require(failed.is_empty(), format!("n={n}: failed {failed:?}"));
    }
    Ok(out)
}

fn identities() -> Result<Outcome> {
    let mut out = Outcome::new();
    for n in [8, 12, 14, 16] {
        let checks = sylow_identity_checks(n)?;
        let mut names = vec!["minimal_generating_set", "frattini_is_derived", "frattini_index"];
        if n == 8 || n == 16 {
            names.extend(["base_group_generators", "base_group_products", "alternating_base_product"]);
        }
        if n == 8 {
            names.extend(["frattini_set_p", "frattini_set_q"]);
        }
        out.require_checks(&checks, &names, &format!("n={n}"));
        out.require(checks.iter().all(Check::passed), format!("n={n}: a construction identity failed"));
    }
    Ok(out)
}

/// Re-decomposes after a seeded basis change and a reversed generator list;
/// summand dimensions and isomorphism types must not move.
fn krull_schmidt_stable(v: &GModule, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = v.dim();
    let p = loop {
        let m = Matrix::from_fn(v.field(), d, d, |_, _| v.field().elem(rng.gen_range(0..2)).unwrap());
        if m.is_invertible() {
            break m;
        }
    };
    let moved = v.change_basis(&p)?;
    let gens: Vec<_> = moved.group().gens().iter().rev().cloned().collect();
    let group = Arc::new(PermGroup::new(moved.group().degree(), gens)?);
    let actions: Vec<Matrix> = moved.actions().iter().rev().cloned().collect();
    let moved = GModule::new(group, moved.field(), d, actions, "moved")?;
    let options = DecompOptions { seed, ..DecompOptions::default() };
    let base = decompose(v, &DecompOptions::default())?;
    let other = decompose(&moved, &options)?;
    let (mut a, mut b) = (base.dims(), other.dims());
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Ok(false);
    }
    let mut unmatched: Vec<GModule> = other.summands.clone();
    for s in &base.summands {
        let s = s.extend_scalars(other.field_used)?;
        let actions = s.actions().iter().rev().cloned().collect();
        let s = GModule::new(Arc::clone(moved.group_arc()), s.field(), s.dim(), actions, "summand")?;
        let mut hit = None;
        for (i, u) in unmatched.iter().enumerate() {
            if u.dim() == s.dim() && iso_test(&s, u, seed)?.is_isomorphic() {
                hit = Some(i);
                break;
            }
        }
        match hit {
            Some(i) => {
                unmatched.remove(i);
            }
            None => return Ok(false),
        }
    }
    Ok(unmatched.is_empty())
}

fn properties() -> Result<Outcome> {
    let mut out = Outcome::new();
    let linalg = linalg_oracle_suite(1000, 1);
    out.require(linalg.passed(), linalg.details);
    let idem = idempotent_oracle_suite(200, 2)?;
    out.require(idem.passed(), idem.details);

    let mut battery = Vec::new();
    for n in [8, 10, 12, 14] {
        let s = named_subgroups(n)?;
        for g in [s.x.clone(), s.y_alt.clone(), s.q.clone()] {
            battery.push(heart(n, g, Field::GF2)?);
        }
    }
    for seed in 0..5 {
        for v in &battery {
            out.require(krull_schmidt_stable(v, seed)?, format!("seed {seed}: order {} unstable", v.group().order()));
        }
    }

    let a = verify_n(10, &config())?.to_json();
    let b = verify_n(10, &config())?.to_json();
    out.require(a == b, "reruns differ");

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let big = Matrix::from_fn(Field::GF2, 2000, 2000, |_, _| Field::GF2.elem(rng.gen_range(0..2)).unwrap());
    let start = Instant::now();
    let rank = big.rank();
    let secs = start.elapsed().as_secs_f64();
    out.require(secs <= 1.0 && rank >= 1990, format!("2000 x 2000 rank {rank} took {secs:.3}s"));
    Ok(out)
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("vertex table n=3..12", vertex_table),
        ("2-group vertex n=14,16,22,30", two_group_extension),
        ("endomorphism algebras n=10", endomorphisms_at_ten),
        ("socles on Y'", socles),
        ("norm kernels n=12,14", kernels),
        ("summands of res_Y' E at n=14", y_alt_summands),
        ("n=6 over GF(2) and GF(4)", degree_six),
        ("symmetric group battery", symmetric),
        ("construction identities", identities),
        ("property suites", properties),
    ];
    let mut all = true;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f().unwrap_or_else(|e| Outcome { ok: false, details: vec![e.to_string()] });
        let status = if outcome.ok { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} {name} ({:.1}s)", i + 1, start.elapsed().as_secs_f64());
        for d in &outcome.details {
            println!("    {d}");
        }
        all &= outcome.ok;
    }
    if !all {
        std::process::exit(1);
    }
}
