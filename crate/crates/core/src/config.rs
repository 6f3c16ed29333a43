//! Sweep configuration.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Extra work a sweep performs per `n`.
///
/// The division route, the identity route and positivity are computed for
/// every report regardless; `Identity` and `Positivity` only control which
/// flags count toward the verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Identity,
    Positivity,
    /// `{2n} = {n+1}{n} + t{n-1}{n}`, the diagonal of the addition lemma.
    Lemma21,
    /// Evaluations at `(2,-1)` and `(1,1)` against integer oracles.
    Specializations,
}

impl Check {
    pub const ALL: [Check; 4] = [
        Check::Identity,
        Check::Positivity,
        Check::Lemma21,
        Check::Specializations,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Identity => "identity",
            Check::Positivity => "positivity",
            Check::Lemma21 => "lemma21",
            Check::Specializations => "specializations",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s.trim())
            .ok_or_else(|| Error::Config(format!("unknown check {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(Error::Config(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepConfig {
    pub max_n: usize,
    /// Sorted, without duplicates.
    pub checks: Vec<Check>,
    pub jobs: usize,
    pub format: OutputFormat,
    /// When set, reports also carry the Catalan polynomial evaluated here.
    pub spec_point: Option<(i64, i64)>,
    pub seed: u64,
    /// Reports embed the full polynomial up to this many terms, a digest
    /// beyond it.
    pub max_terms: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_n: 50,
            checks: vec![Check::Identity, Check::Positivity],
            jobs: 1,
            format: OutputFormat::Text,
            spec_point: None,
            seed: 0,
            max_terms: 256,
        }
    }
}

impl SweepConfig {
    pub fn validate(mut self) -> Result<Self> {
        if self.max_n < 1 {
            return Err(Error::Config("max_n must be at least 1".into()));
        }
        if self.jobs < 1 {
            return Err(Error::Config("jobs must be at least 1".into()));
        }
        self.checks.sort();
        self.checks.dedup();
        if self.checks.is_empty() {
            return Err(Error::Config("at least one check is required".into()));
        }
        Ok(self)
    }

    pub fn has(&self, check: Check) -> bool {
        self.checks.contains(&check)
    }
}
