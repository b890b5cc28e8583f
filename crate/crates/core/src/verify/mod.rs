//! Per-degree verification batteries and their reports.

mod battery;
mod config;
mod identities;
pub mod oracles;
mod report;
mod run;
mod selftest;

pub use battery::{case_checks, endo_table_matches, split_summands, module_structure_checks, symmetric_checks};
pub use config::{Budgets, Config, ReportFormat};
pub use identities::{convention_canary, sylow_identity_checks};
pub use report::{Expected, Report, ReportRow, SourceSummary, Timings, VertexSummary};
pub use run::{expected_vertex, verify_n, verify_range};
pub use selftest::{diff_fixtures, fixture_reference_check, fixture_round_trip_check, parse_bundle, selftest, write_bundle, SelftestReport};
