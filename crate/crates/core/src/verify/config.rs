use serde::Serialize;

use crate::decomp::DecompOptions;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::vertex::VertexConfig;

/// Report serialization.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFormat {
    #[default]
    Json,
    Text,
}

/// Work limits recorded in every report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    /// Largest coset transversal any check may enumerate.
    pub cosets: u128,
    /// Largest group any check may enumerate element by element.
    pub elements: u128,
    /// Largest endomorphism algebra enumerated exhaustively when testing locality.
    pub enumeration: u64,
}

impl Default for Budgets {
    fn default() -> Budgets {
        Budgets { cosets: 50_000_000, elements: 1 << 20, enumeration: 1 << 20 }
    }
}

/// Settings for a verification run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    /// Largest degree `verify_n` accepts.
    pub max_degree: usize,
    /// Degree of the coefficient field over GF(2); escalation may enlarge it.
    pub field_degree: u8,
    pub allow_escalation: bool,
    pub budgets: Budgets,
    pub seed: u64,
    pub format: ReportFormat,
    /// Adds the symmetric-group battery for even degrees that are not 2-powers.
    pub include_sn: bool,
    /// Zeroes all timings so that reruns are byte-identical.
    pub normalize_timings: bool,
}

impl Default for Config {
    fn default() -> Config {
        Config {
            max_degree: 64,
            field_degree: 1,
            allow_escalation: true,
            budgets: Budgets::default(),
            seed: 0,
            format: ReportFormat::Json,
            include_sn: false,
            normalize_timings: false,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        let b = &self.budgets;
        if b.cosets == 0 || b.elements == 0 || b.enumeration == 0 {
            return Err(Error::Config("budgets must be positive".into()));
        }
        self.field()?;
        if self.max_degree < 3 {
            return Err(Error::Config("the maximum degree must be at least 3".into()));
        }
        Ok(())
    }

    pub fn field(&self) -> Result<Field> {
        Field::new(self.field_degree)
    }

    pub fn vertex_config(&self) -> Result<VertexConfig> {
        Ok(VertexConfig {
            field: self.field()?,
            seed: self.seed,
            budget_cosets: self.budgets.cosets,
            budget_elements: self.budgets.elements,
            allow_escalation: self.allow_escalation,
            enumeration_limit: self.budgets.enumeration,
        })
    }

    pub fn decomp_options(&self) -> DecompOptions {
        DecompOptions { seed: self.seed, allow_escalation: self.allow_escalation, enumeration_limit: self.budgets.enumeration }
    }
}
