//! Reproducible verification suites: grids of `(n, d, x)` cells, each either
//! a constructed member that must verify or a batch of random trials in
//! which no member may appear.

pub mod config;
pub mod io;
pub mod report;
pub mod suites;

use thiserror::Error;

use crate::cohomology::CohomologyError;
use crate::constructions::ConstructionError;
use crate::critical::CriticalError;
use crate::linalg::LinalgError;
use crate::projgeom::GeomError;
use crate::schemes::SchemeError;
use crate::terracini::TerraciniError;
use crate::witness::WitnessError;

pub use config::{Grid, SuiteConfig, SuiteId};
pub use io::{check_input, check_scheme, load_input, write_csv, write_json, CheckOutcome, Input};
pub use report::{CellReport, Counterexample, SuiteReport, EVIDENCE_LABEL, SCHEMA_VERSION};
pub use suites::run_suite;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("unknown suite {0:?}")]
    UnknownSuite(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("counterexample in suite {} at (n={}, d={}, x={})", .0.suite, .0.n, .0.d, .0.x)]
    CounterexampleFound(Box<Counterexample>),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Terracini(#[from] TerraciniError),
    #[error(transparent)]
    Critical(#[from] CriticalError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

impl SuiteReport {
    /// Turns the first counterexample into an error.
    pub fn into_result(self) -> Result<SuiteReport, HarnessError> {
        match self.counterexamples.first() {
            Some(c) => Err(HarnessError::CounterexampleFound(Box::new(c.clone()))),
            None => Ok(self),
        }
    }
}
