use std::time::Instant;

use rayon::prelude::*;

use crate::constructions::{named_subgroups, two_adic_profile};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::perm::{two_adic_valuation_factorial, ConjugacyOutcome, Perm, PermGroup};
use crate::vertex::{natural_simple, vertex_of_natural_simple, Check, VertexReport};

use super::battery::{case_checks, module_structure_checks, symmetric_checks};
use super::config::Config;
use super::identities::sylow_identity_checks;
use super::report::{Expected, Report, ReportRow, SourceSummary, Timings, VertexSummary};

/// `|Sylow_2(A_m)|` from the 2-adic valuation of `m!`.
fn alternating_sylow_order(m: usize) -> u128 {
    1u128 << two_adic_valuation_factorial(m).saturating_sub(1)
}

/// The vertex and source predicted for the natural simple module of `A_n`.
pub fn expected_vertex(n: usize) -> Result<Expected> {
    let e = |order, description: String, source_dim, trivial_source| Expected {
        order,
        description,
        source_dim,
        trivial_source,
    };
    Ok(match n {
        0..=2 => return Err(Error::Domain(format!("degree {n} is below 3"))),
        4 => e(4, "Sylow 2-subgroup of A_4".into(), 1, true),
        6 => e(4, "<(1,2)(3,4),(3,4)(5,6)>".into(), 2, false),
        n if n % 2 == 1 && n - 3 < 4 => e(1, "trivial group".into(), 1, true),
        n if n % 2 == 1 => e(alternating_sylow_order(n - 3), format!("Sylow 2-subgroup of A_{}", n - 3), 1, true),
        n => e(alternating_sylow_order(n), format!("Q_{n}"), n - 2, false),
    })
}

/// Whether `v` is the predicted vertex up to identification: the exact group for `n = 6` and even `n >= 8`, and otherwise any
/// subgroup of `A_{n-3}` (or `A_4`) of Sylow order.
fn identifies(n: usize, v: &PermGroup, expected: &Expected) -> Result<bool> {
    let even = v.gens().iter().all(|g| g.is_even());
    if n == 6 {
        let q = PermGroup::new(6, vec![Perm::parse_with_degree("(1,2)(3,4)", 6)?, Perm::parse_with_degree("(3,4)(5,6)", 6)?])?;
        return Ok(v.same_group(&q));
    }
    if n.is_multiple_of(2) && n >= 8 {
        return Ok(even && v.order() == expected.order && v.same_group(&named_subgroups(n)?.q));
    }
    let m = if n == 4 { 4 } else { n - 3 };
    let fixes_tail = v.gens().iter().all(|g| (m..n).all(|p| g.images()[p] as usize == p));
    Ok(even && fixes_tail && v.order() == expected.order)
}

fn expected_checks(n: usize, report: &VertexReport, expected: &Expected, config: &Config) -> Result<Vec<Check>> {
    let lower = report.lower_bound.iter().map(|s| s.vertex_order).max().unwrap_or(1);
    let mut checks = vec![
        Check::new(
            "vertex_order_expected",
            report.vertex_order() == expected.order && lower == expected.order,
            format!("certified {}, lower bound {lower}, expected {}", report.vertex_order(), expected.order),
        ),
        Check::new(
            "vertex_identified",
            identifies(n, &report.vertex, expected)? && report.conjugacy.is_conjugate(),
            format!("{} ({})", expected.description, report.conjugacy.mode()),
        ),
        Check::new(
            "source_dim_expected",
            report.source_dim() == expected.source_dim,
            format!("{} vs {}", report.source_dim(), expected.source_dim),
        ),
        Check::new(
            "trivial_source_expected",
            report.trivial_source == expected.trivial_source,
            format!("{} vs {}", report.trivial_source, expected.trivial_source),
        ),
    ];
    if n.is_multiple_of(2) && n >= 8 {
        let full = report.lower_bound.first().is_some_and(|s| {
            s.vertex_order == expected.order && s.steps.first().is_some_and(|st| st.accepted.is_none())
        });
        checks.push(Check::new(
            "sylow_restriction_indecomposable",
            report.restriction_indecomposable(),
            format!("summand dims {:?}", report.restriction_dims),
        ));
        checks.push(Check::new(
            "no_maximal_subgroup_admits_projectivity",
            full,
            report.lower_bound.first().map_or("no summand".into(), |s| {
                format!("{} maximal subgroups of Q_{n} rejected", s.steps.first().map_or(0, |st| st.candidates))
            }),
        ));
    }
    if n == 6 {
        let f = report.source.field();
        checks.push(Check::new(
            "source_field",
            f == Field::GF4,
            format!("source over GF({}), run started over GF({})", f.order(), config.field()?.order()),
        ));
    }
    Ok(checks)
}

/// The coefficient field of a row: the configured one, doubled in degree for
/// `n < 5` where `E` is only absolutely simple over GF(4).
fn row_field(n: usize, config: &Config) -> Result<Field> {
    let f = config.field()?;
    if n < 5 && f.degree() % 2 == 1 {
        return Field::new(2 * f.degree());
    }
    Ok(f)
}

fn run_battery(
    row: &mut ReportRow,
    name: &str,
    f: impl FnOnce(&mut ReportRow) -> Result<Vec<Check>>,
) {
    let start = Instant::now();
    match f(row) {
        Ok(checks) => row.checks.extend(checks),
        Err(e) => {
            row.complete = false;
            row.checks.push(Check::new(format!("{name}_incomplete"), false, e.to_string()));
        }
    }
    let ms = start.elapsed().as_millis() as u64;
    row.timings.batteries.push((name.to_string(), ms));
}

/// Every battery for degree `n`, in a fixed order. Budget overflows and
/// inconclusive computations mark the row incomplete instead of failing.
pub fn verify_n(n: usize, config: &Config) -> Result<ReportRow> {
    config.validate()?;
    if !(3..=config.max_degree).contains(&n) {
        return Err(Error::Config(format!("degree {n} is outside 3..={}", config.max_degree)));
    }
    let start = Instant::now();
    let profile = two_adic_profile(n)?;
    let field = row_field(n, config)?;
    let row_config = Config { field_degree: field.degree(), ..*config };
    let mut row = ReportRow {
        n,
        parts: profile.parts().to_vec(),
        case: profile.case_tag(),
        dim_e: 0,
        restriction_indecomposable: None,
        vertex: None,
        source: None,
        checks: Vec::new(),
        complete: true,
        timings: Timings::default(),
        seed: config.seed,
        budgets: config.budgets,
        version: env!("CARGO_PKG_VERSION").to_string(),
    };
    let cfg = &row_config;
    run_battery(&mut row, "identities", |_| sylow_identity_checks(n));
    run_battery(&mut row, "structure", |row| {
        row.dim_e = natural_simple(n, field)?.dim();
        module_structure_checks(n, cfg)
    });
    run_battery(&mut row, "case", |row| case_checks(n, row.case, cfg));
    run_battery(&mut row, "sandwich", |row| {
        let report = vertex_of_natural_simple(n, &cfg.vertex_config()?)?;
        let expected = expected_vertex(n)?;
        row.restriction_indecomposable = Some(report.restriction_indecomposable());
        row.source = Some(SourceSummary { dim: report.source_dim(), trivial: report.trivial_source });
        let witness = match &report.conjugacy {
            ConjugacyOutcome::Witness { element, .. } => Some(element.to_string()),
            _ => None,
        };
        let mut checks = report.checks.clone();
        checks.extend(expected_checks(n, &report, &expected, cfg)?);
        row.vertex = Some(VertexSummary {
            order: report.vertex_order(),
            generators: report.vertex.gens().iter().map(ToString::to_string).collect(),
            expected,
            conjugacy_mode: report.conjugacy.mode().to_string(),
            witness,
        });
        Ok(checks)
    });
    if config.include_sn && n.is_multiple_of(2) && !profile.is_two_power() && n >= 6 {
        run_battery(&mut row, "symmetric", |_| symmetric_checks(n, cfg));
    }
    row.timings.total_ms = start.elapsed().as_millis() as u64;
    if config.normalize_timings {
        row.timings.normalize();
    }
    Ok(row)
}

/// One row per degree in `from..=to`, computed in parallel.
pub fn verify_range(from: usize, to: usize, config: &Config) -> Result<Report> {
    if from < 3 || from > to {
        return Err(Error::Config(format!("invalid degree range {from}..{to}")));
    }
    let rows = (from..=to).into_par_iter().map(|n| verify_n(n, config)).collect::<Result<Vec<_>>>()?;
    Ok(Report { rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expected_table() {
        let rows: Vec<(u128, usize, bool)> = (3..=12)
            .map(|n| expected_vertex(n).map(|e| (e.order, e.source_dim, e.trivial_source)).unwrap())
            .collect();
        assert_eq!(
            rows,
            [
                (1, 1, true),
                (4, 1, true),
                (1, 1, true),
                (4, 2, false),
                (4, 1, true),
                (64, 6, false),
                (8, 1, true),
                (128, 8, false),
                (64, 1, true),
                (512, 10, false),
            ]
        );
    }

    #[test]
    fn out_of_range_degrees_are_rejected() {
        let cfg = Config { max_degree: 10, ..Config::default() };
        assert!(verify_n(11, &cfg).is_err());
        assert!(verify_n(2, &cfg).is_err());
        assert!(verify_range(5, 4, &cfg).is_err());
    }

    #[test]
    fn small_rows_pass() {
        let cfg = Config { normalize_timings: true, ..Config::default() };
        for n in [3, 4, 5, 6, 7] {
            let row = verify_n(n, &cfg).unwrap();
            let failed: Vec<_> = row.failed_checks().collect();
            assert!(row.all_pass(), "n = {n}: {failed:?}");
        }
    }
}
