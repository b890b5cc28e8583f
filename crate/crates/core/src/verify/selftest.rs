use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::constructions::{dump_fixtures, named_subgroups, natural_modules, parse_perm_list, Fixture, NaturalKind};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::gmod::GModule;
use crate::linalg::Matrix;
use crate::vertex::Check;

use super::config::Config;
use super::identities::sylow_identity_checks;
use super::oracles::{closure_order_suite, idempotent_oracle_suite, linalg_oracle_suite};

/// Reference dumps over GF(4), one bundle per degree.
const REFERENCE_BUNDLES: [(usize, &str); 4] = [
    (6, include_str!("../../fixtures/n6.bundle")),
    (8, include_str!("../../fixtures/n8.bundle")),
    (10, include_str!("../../fixtures/n10.bundle")),
    (14, include_str!("../../fixtures/n14.bundle")),
];

/// Degrees whose construction identities the self-test replays.
const IDENTITY_DEGREES: [usize; 4] = [8, 12, 14, 16];

const HEADER: &str = "=== ";

/// Concatenates fixtures into one text file, each introduced by a `=== name` line.
pub fn write_bundle(fixtures: &[Fixture]) -> String {
    fixtures.iter().map(|f| format!("{HEADER}{}\n{}", f.name, f.contents)).collect()
}

pub fn parse_bundle(text: &str) -> Result<Vec<Fixture>> {
    let mut out: Vec<Fixture> = Vec::new();
    for line in text.split_inclusive('\n') {
        if let Some(name) = line.strip_prefix(HEADER) {
            out.push(Fixture { name: name.trim_end().to_string(), contents: String::new() });
        } else if let Some(last) = out.last_mut() {
            last.contents.push_str(line);
        } else if !line.trim().is_empty() {
            return Err(Error::Parse("bundle content before the first fixture header".into()));
        }
    }
    Ok(out)
}

/// Names of fixtures that differ, are missing, or are unexpected.
pub fn diff_fixtures(reference: &[Fixture], produced: &[Fixture]) -> Vec<String> {
    let mut out = Vec::new();
    for r in reference {
        match produced.iter().find(|p| p.name == r.name) {
            Some(p) if p.contents == r.contents => {}
            Some(_) => out.push(format!("{} differs", r.name)),
            None => out.push(format!("{} missing", r.name)),
        }
    }
    out.extend(
        produced
            .iter()
            .filter(|p| !reference.iter().any(|r| r.name == p.name))
            .map(|p| format!("{} unexpected", p.name)),
    );
    out
}

/// Compares a reference bundle against a fresh dump for degree `n`.
pub fn fixture_reference_check(n: usize, reference: &str) -> Result<Check> {
    let reference = parse_bundle(reference)?;
    let diffs = diff_fixtures(&reference, &dump_fixtures(n, Field::GF4)?);
    let details = if diffs.is_empty() { format!("{} fixtures identical", reference.len()) } else { diffs.join("; ") };
    Ok(Check::new(format!("fixture_reference_n{n}"), diffs.is_empty(), details))
}

/// Parse-print round trips of every matrix and permutation fixture, and of
/// module fixtures for the heart on the Sylow subgroup.
pub fn fixture_round_trip_check(n: usize, field: Field) -> Result<Check> {
    let mut bad = Vec::new();
    for fx in dump_fixtures(n, field)? {
        let again = if fx.name.ends_with(".mat") {
            fx.contents.parse::<Matrix>()?.to_string()
        } else if fx.name.ends_with(".perm") {
            parse_perm_list(&fx.contents, n)?.iter().map(|p| format!("{p}\n")).collect()
        } else {
            continue;
        };
        if again != fx.contents {
            bad.push(fx.name);
        }
    }
    if n.is_multiple_of(2) && n >= 4 {
        let q = std::sync::Arc::new(named_subgroups(n)?.q);
        let v = GModule::natural(q, &natural_modules(n, field)?, NaturalKind::Heart, "heart")?;
        let text = v.to_fixture();
        if GModule::from_fixture(&text)?.to_fixture() != text {
            bad.push("module fixture".into());
        }
    }
    Ok(Check::new(format!("fixture_round_trip_n{n}"), bad.is_empty(), format!("failed: {bad:?}")))
}

/// Outcome of the self-test suites.
#[derive(Clone, Debug, Serialize)]
pub struct SelftestReport {
    pub checks: Vec<Check>,
    pub seed: u64,
    pub total_ms: u64,
    pub version: String,
}

impl SelftestReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(!self.all_pass())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("self-test reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "FAIL" };
            let _ = writeln!(out, "{status:<5} {:<44} {}", c.name, c.details);
        }
        out
    }
}

fn push(checks: &mut Vec<Check>, name: &str, r: Result<Check>) {
    checks.push(r.unwrap_or_else(|e| Check::new(name, false, e.to_string())));
}

/// Oracle equivalence, the construction identities at the self-test degrees,
/// and fixture round trips against the reference bundles.
pub fn selftest(config: &Config) -> SelftestReport {
    let start = Instant::now();
    let seed = config.seed;
    let mut checks = vec![linalg_oracle_suite(200, seed)];
    push(&mut checks, "idempotent_oracle", idempotent_oracle_suite(60, seed));
    push(&mut checks, "closure_vs_chain_orders", closure_order_suite());
    for n in IDENTITY_DEGREES {
        match sylow_identity_checks(n) {
            Ok(cs) => checks.extend(cs.into_iter().map(|c| Check { name: format!("n{n}_{}", c.name), ..c })),
            Err(e) => checks.push(Check::new(format!("n{n}_identities"), false, e.to_string())),
        }
    }
    for (n, bundle) in REFERENCE_BUNDLES {
        push(&mut checks, "fixture_round_trip", fixture_round_trip_check(n, Field::GF4));
        push(&mut checks, "fixture_reference", fixture_reference_check(n, bundle));
    }
    SelftestReport {
        checks,
        seed,
        total_ms: if config.normalize_timings { 0 } else { start.elapsed().as_millis() as u64 },
        version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundles_round_trip() {
        let dump = dump_fixtures(8, Field::GF4).unwrap();
        assert_eq!(parse_bundle(&write_bundle(&dump)).unwrap(), dump);
    }

    #[test]
    fn corrupted_fixture_is_named() {
        let mut dump = dump_fixtures(6, Field::GF4).unwrap();
        let i = dump.iter().position(|f| f.name == "split/u.mat").unwrap();
        dump[i].contents = dump[i].contents.replacen('1', "0", 1);
        let c = fixture_reference_check(6, &write_bundle(&dump)).unwrap();
        assert!(!c.passed());
        assert_eq!(c.details, "split/u.mat differs");
    }

    #[test]
    fn reference_bundles_match() {
        for (n, bundle) in REFERENCE_BUNDLES {
            let c = fixture_reference_check(n, bundle).unwrap();
            assert!(c.passed(), "{}", c.details);
        }
    }
}
