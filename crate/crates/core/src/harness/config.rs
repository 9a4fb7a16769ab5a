use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::linalg::PrimeField;
use crate::parallel::Exec;
use crate::witness::DEFAULT_BUDGET;

use super::HarnessError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SuiteId {
    #[serde(rename = "ah")]
    Ah,
    #[serde(rename = "ai0")]
    Ai0,
    #[serde(rename = "rob1")]
    Rob1,
    #[serde(rename = "a9.0")]
    A90,
    #[serde(rename = "de2")]
    De2,
    #[serde(rename = "n2a1")]
    N2a1,
    #[serde(rename = "ooo1")]
    Ooo1,
    #[serde(rename = "n3.1")]
    N31,
    #[serde(rename = "ceo1")]
    Ceo1,
    #[serde(rename = "ex4d")]
    Ex4d,
    #[serde(rename = "oo1")]
    Oo1,
    #[serde(rename = "prepa1")]
    Prepa1,
    #[serde(rename = "43")]
    P43,
}

impl SuiteId {
    pub const ALL: [SuiteId; 13] = [
        SuiteId::Ah,
        SuiteId::Ai0,
        SuiteId::Rob1,
        SuiteId::A90,
        SuiteId::De2,
        SuiteId::N2a1,
        SuiteId::Ooo1,
        SuiteId::N31,
        SuiteId::Ceo1,
        SuiteId::Ex4d,
        SuiteId::Oo1,
        SuiteId::Prepa1,
        SuiteId::P43,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteId::Ah => "ah",
            SuiteId::Ai0 => "ai0",
            SuiteId::Rob1 => "rob1",
            SuiteId::A90 => "a9.0",
            SuiteId::De2 => "de2",
            SuiteId::N2a1 => "n2a1",
            SuiteId::Ooo1 => "ooo1",
            SuiteId::N31 => "n3.1",
            SuiteId::Ceo1 => "ceo1",
            SuiteId::Ex4d => "ex4d",
            SuiteId::Oo1 => "oo1",
            SuiteId::Prepa1 => "prepa1",
            SuiteId::P43 => "43",
        }
    }

    /// The statement each suite corroborates, for reports.
    pub fn statement(self) -> &'static str {
        match self {
            SuiteId::Ah => "general sets in the Alexander–Hirschowitz exceptional cells are minimally Terracini",
            SuiteId::Ai0 => "T(n,d;x) is nonempty if and only if x >= n + ceil(d/2)",
            SuiteId::Rob1 => "a minimally Terracini set has h1(I_2S(d+1)) = 0 and determines d",
            SuiteId::A90 => "1 + ceil(nd/2) points on a rational normal curve are minimally Terracini",
            SuiteId::De2 => "necessary conditions for minimally Terracini sets on reducible rational normal curves",
            SuiteId::N2a1 => "minimally Terracini sets in the plane for x <= 3d/2",
            SuiteId::Ooo1 => "T(3,d;x)' is empty when 2x <= 3d + 1",
            SuiteId::N31 => "for x = 1 + ceil(3d/2), members of T(3,d;x)' lie on a rational normal curve",
            SuiteId::Ceo1 => "T(3,d;x)' is empty for 1 + ceil(3d/2) < x < 2d",
            SuiteId::Ex4d => "2d points cut on an elliptic quartic by a degree d/2 surface are minimally Terracini",
            SuiteId::Oo1 => "T(n,d;x)' is empty for x > rho",
            SuiteId::Prepa1 => "h1 > 0 for double points is intrinsic to the span of the support",
            SuiteId::P43 => "T(n,d;x) is empty for x < n + ceil(d/2)",
        }
    }

    /// Suites whose main output is the absence of members.
    pub fn is_emptiness(self) -> bool {
        matches!(self, SuiteId::Ooo1 | SuiteId::N31 | SuiteId::Ceo1 | SuiteId::Oo1 | SuiteId::P43)
    }
}

impl fmt::Display for SuiteId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SuiteId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| HarnessError::UnknownSuite(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub n: Vec<usize>,
    pub d: Vec<usize>,
    /// Explicit sizes; `None` uses the suite's range for each `(n, d)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<usize>>,
}

impl Grid {
    fn new(n: impl IntoIterator<Item = usize>, d: impl IntoIterator<Item = usize>) -> Self {
        Self {
            n: n.into_iter().collect(),
            d: d.into_iter().collect(),
            x: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub suite: SuiteId,
    pub grid: Grid,
    /// Uniform random trials per emptiness cell.
    pub trials: usize,
    /// Structured trials per emptiness cell.
    pub structured_trials: usize,
    pub seed: u64,
    pub primes: Vec<u64>,
    /// Smooth-conic subset budget for witness searches.
    pub budget: usize,
    pub exec: Exec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl SuiteConfig {
    /// The grid and trial counts the suite's statement is checked on.
    pub fn new(suite: SuiteId) -> Self {
        let (grid, trials, structured) = match suite {
            SuiteId::Ah => (Grid::new([2, 3, 4], [3, 4]), 1, 0),
            SuiteId::Ai0 => (Grid::new([2, 3], 3..=8), 500, 500),
            SuiteId::P43 => (Grid::new([2, 3, 4], 3..=8), 500, 500),
            SuiteId::Rob1 => (Grid::new([2, 3], 4..=6), 1, 0),
            SuiteId::A90 => (Grid::new([2, 3, 4], 4..=8), 1, 0),
            SuiteId::De2 => (Grid::new([2, 3, 4], 5..=8), 1, 0),
            SuiteId::N2a1 => (Grid::new([2], 4..=8), 300, 300),
            SuiteId::Ooo1 => (Grid::new([3], 4..=8), 200, 200),
            SuiteId::N31 => (Grid::new([3], [7]), 0, 500),
            SuiteId::Ceo1 => (Grid::new([3], [17]), 100, 100),
            SuiteId::Ex4d => (Grid::new([3], [6, 8]), 1, 0),
            SuiteId::Oo1 => (Grid::new([2, 3], 3..=6), 100, 100),
            SuiteId::Prepa1 => (Grid::new([3, 4], 4..=6), 40, 0),
        };
        Self {
            suite,
            grid,
            trials,
            structured_trials: structured,
            seed: 0x7e22_ac11,
            primes: vec![PrimeField::default_field().modulus()],
            budget: DEFAULT_BUDGET,
            exec: Exec::default(),
            output: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    /// Sets both uniform and structured trial counts (structured only where
    /// the suite uses them).
    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = if self.suite == SuiteId::N31 { 0 } else { trials };
        if self.structured_trials > 0 {
            self.structured_trials = trials;
        }
        self
    }

    pub fn with_exec(mut self, exec: Exec) -> Self {
        self.exec = exec;
        self
    }

    pub fn with_primes(mut self, primes: Vec<u64>) -> Self {
        self.primes = primes;
        self
    }

    pub fn fields(&self) -> Result<Vec<PrimeField>, HarnessError> {
        if self.primes.is_empty() {
            return Err(HarnessError::InvalidConfig("at least one prime is required".into()));
        }
        self.primes
            .iter()
            .map(|&p| PrimeField::new(p).map_err(|e| HarnessError::InvalidConfig(e.to_string())))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_ids_round_trip() {
        for id in SuiteId::ALL {
            assert_eq!(id.as_str().parse::<SuiteId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.as_str()));
        }
        assert!("nope".parse::<SuiteId>().is_err());
    }

    #[test]
    fn config_round_trips_through_json() {
        let cfg = SuiteConfig::new(SuiteId::Ooo1).with_seed(9).with_trials(3);
        let back: SuiteConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
        assert_eq!((back.trials, back.structured_trials), (3, 3));
    }
}
