use serde::Serialize;
use serde_json::Value;

use crate::constructions::families::Family;
use crate::projgeom::Point;
use crate::terracini::{BoundCheck, MembershipCertificate};
use crate::witness::Witness;

use super::config::{SuiteConfig, SuiteId};

pub const SCHEMA_VERSION: u32 = 1;
pub const EVIDENCE_LABEL: &str = "evidence, not proof";

/// Why a sampled set is not a counterexample.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Refutation {
    SpanDeficient {
        span_dim: usize,
    },
    NoSections,
    Independent,
    /// `S` minus the point at `omitted` still has `h1 > 0`.
    ViolatingSubset {
        omitted: usize,
        subset_h1: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub family: Family,
    pub seed: u64,
    pub h0: usize,
    pub h1: usize,
    pub refutation: Option<Refutation>,
    /// Classification of a critical scheme of a Terracini hit.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// A named quantity compared with its expected value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub value: String,
    pub expected: String,
    pub holds: bool,
}

impl Check {
    pub fn eq<T: PartialEq + ToString>(name: impl Into<String>, value: T, expected: T) -> Self {
        Self {
            name: name.into(),
            holds: value == expected,
            value: value.to_string(),
            expected: expected.to_string(),
        }
    }

    pub fn at_least(name: impl Into<String>, value: usize, bound: usize) -> Self {
        Self {
            name: name.into(),
            value: value.to_string(),
            expected: format!(">= {bound}"),
            holds: value >= bound,
        }
    }

    pub fn holds(name: impl Into<String>, holds: bool) -> Self {
        Self::eq(name, holds, true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalSummary {
    pub degree: usize,
    pub h1: usize,
    pub full_support: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MemberRecord {
    pub source: String,
    pub seed: u64,
    pub certificate: MembershipCertificate,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub bounds: Vec<BoundCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub critical: Option<CriticalSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    pub ok: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CellKind {
    Positive,
    Emptiness,
    Consistency,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellReport {
    pub n: usize,
    pub d: usize,
    pub x: usize,
    pub kind: CellKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<&'static str>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub members: Vec<MemberRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trials: Vec<TrialRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub retries: u32,
    pub timing_ms: u128,
}

impl CellReport {
    pub fn new(n: usize, d: usize, x: usize, kind: CellKind) -> Self {
        Self {
            n,
            d,
            x,
            kind,
            label: (kind == CellKind::Emptiness).then_some(EVIDENCE_LABEL),
            members: Vec::new(),
            trials: Vec::new(),
            checks: Vec::new(),
            notes: Vec::new(),
            retries: 0,
            timing_ms: 0,
        }
    }

    pub fn terracini_hits(&self) -> usize {
        self.trials
            .iter()
            .filter(|t| matches!(t.refutation, Some(Refutation::ViolatingSubset { .. }) | None))
            .count()
    }

    pub fn ok(&self) -> bool {
        self.members.iter().all(|m| m.ok) && self.checks.iter().all(|c| c.holds)
    }
}

/// A set that contradicts the suite's statement, with everything needed to
/// re-check it offline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub suite: SuiteId,
    pub n: usize,
    pub d: usize,
    pub x: usize,
    pub trial: usize,
    pub family: Family,
    pub seed: u64,
    pub points: Vec<Point>,
    pub certificate: MembershipCertificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub n: usize,
    pub d: usize,
    pub x: usize,
    pub what: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Environment {
    pub crate_version: &'static str,
    pub parallel_feature: bool,
    pub threads: usize,
}

impl Environment {
    pub fn current() -> Self {
        #[cfg(feature = "parallel")]
        let threads = rayon::current_num_threads();
        #[cfg(not(feature = "parallel"))]
        let threads = 1;
        Self {
            crate_version: env!("CARGO_PKG_VERSION"),
            parallel_feature: cfg!(feature = "parallel"),
            threads,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: SuiteId,
    pub statement: &'static str,
    pub label: &'static str,
    pub config: SuiteConfig,
    pub cells: Vec<CellReport>,
    /// Must stay empty.
    pub counterexamples: Vec<Counterexample>,
    /// Structural bounds violated by some member; must stay empty.
    pub bound_violations: Vec<Failure>,
    /// Terracini hits whose critical scheme found no witness curve.
    pub classification_failures: Vec<Failure>,
    /// Positive cells or checks that did not verify.
    pub failed_checks: Vec<Failure>,
    pub passed: bool,
    pub environment: Environment,
    pub timing_ms: u128,
}

impl SuiteReport {
    pub fn members(&self) -> impl Iterator<Item = &MemberRecord> {
        self.cells.iter().flat_map(|c| c.members.iter())
    }

    pub fn trial_count(&self) -> usize {
        self.cells.iter().map(|c| c.trials.len()).sum()
    }

    /// The report as JSON without timing and environment fields, which is
    /// what reruns must reproduce exactly.
    pub fn fingerprint(&self) -> Value {
        fn strip(v: &mut Value) {
            match v {
                Value::Object(m) => {
                    m.remove("timing_ms");
                    m.remove("environment");
                    m.values_mut().for_each(strip);
                }
                Value::Array(a) => a.iter_mut().for_each(strip),
                _ => {}
            }
        }
        let mut v = serde_json::to_value(self).expect("reports serialize");
        strip(&mut v);
        if let Value::Object(m) = &mut v {
            if let Some(Value::Object(c)) = m.get_mut("config") {
                c.remove("exec");
            }
        }
        v
    }
}
