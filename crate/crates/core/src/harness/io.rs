//! Reading point sets and schemes, and writing reports.
//!
//! Accepted input shapes:
//! - `{"n": 3, "prime": 2147483647, "points": [[1,0,0,0], ...]}`
//! - a bare array of coordinate vectors
//! - a scheme object `{"n": .., "components": [...]}`

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::cohomology::{cohomology, CohomologyReport};
use crate::critical::{find_critical, CriticalScheme};
use crate::linalg::PrimeField;
use crate::projgeom::Point;
use crate::schemes::{double_scheme, SchemeJson, ZeroDimScheme};
use crate::terracini::{is_minimally_terracini, is_t1, MembershipCertificate};
use crate::witness::{classify_with, Witness, WitnessOptions};

use super::report::SuiteReport;
use super::HarnessError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Input {
    Points { field: PrimeField, points: Vec<Point> },
    Scheme { field: PrimeField, scheme: ZeroDimScheme },
}

impl Input {
    pub fn field(&self) -> PrimeField {
        match self {
            Input::Points { field, .. } | Input::Scheme { field, .. } => *field,
        }
    }

    /// The scheme to take cohomology of: `2S` for a point set.
    pub fn scheme(&self) -> Result<ZeroDimScheme, HarnessError> {
        match self {
            Input::Points { points, .. } => Ok(double_scheme(points)?),
            Input::Scheme { scheme, .. } => Ok(scheme.clone()),
        }
    }
}

fn parse_error(e: serde_json::Error) -> HarnessError {
    HarnessError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    }
}

fn shape_error(message: impl Into<String>) -> HarnessError {
    HarnessError::Parse {
        line: 0,
        column: 0,
        message: message.into(),
    }
}

fn points_from(field: PrimeField, n: Option<usize>, v: &Value) -> Result<Vec<Point>, HarnessError> {
    let rows: Vec<Vec<u64>> = serde_json::from_value(v.clone()).map_err(|e| shape_error(format!("points: {e}")))?;
    if rows.is_empty() {
        return Err(shape_error("no points"));
    }
    let len = n.map_or(rows[0].len(), |n| n + 1);
    rows.into_iter()
        .enumerate()
        .map(|(i, r)| {
            if r.len() != len {
                return Err(shape_error(format!("point {i} has {} coordinates, expected {len}", r.len())));
            }
            Ok(Point::new(field, r)?)
        })
        .collect()
}

/// Parses `text`. The file's `prime` wins over `prime` when present.
pub fn load_input(text: &str, prime: Option<u64>) -> Result<Input, HarnessError> {
    let v: Value = serde_json::from_str(text).map_err(parse_error)?;
    let file_prime = v.get("prime").and_then(Value::as_u64);
    let field = match file_prime.or(prime) {
        Some(p) => PrimeField::new(p)?,
        None => PrimeField::default_field(),
    };
    match &v {
        Value::Array(_) => Ok(Input::Points {
            field,
            points: points_from(field, None, &v)?,
        }),
        Value::Object(m) if m.contains_key("components") => {
            let json: SchemeJson = serde_json::from_value(v.clone()).map_err(|e| shape_error(e.to_string()))?;
            Ok(Input::Scheme {
                field,
                scheme: ZeroDimScheme::from_json(field, &json)?,
            })
        }
        Value::Object(m) => {
            let pts = m.get("points").ok_or_else(|| shape_error("expected \"points\" or \"components\""))?;
            let n = m.get("n").and_then(Value::as_u64).map(|n| n as usize);
            Ok(Input::Points {
                field,
                points: points_from(field, n, pts)?,
            })
        }
        _ => Err(shape_error("expected an object or an array")),
    }
}

/// Everything `check` reports about one input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub cohomology: CohomologyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<MembershipCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub critical: Option<CriticalScheme>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Why no witness was attached, when one was looked for.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_error: Option<String>,
}

/// Cohomology of the input in degree `d`; for point sets also the
/// minimality certificate, a critical scheme and a witness curve when
/// `h1 > 0`.
pub fn check_input(input: &Input, d: usize, minimal: bool, opts: &WitnessOptions) -> Result<CheckOutcome, HarnessError> {
    let field = input.field();
    let z = input.scheme()?;
    let report = cohomology(field, &z, d)?;
    let mut out = CheckOutcome {
        cohomology: report,
        certificate: None,
        critical: None,
        witness: None,
        witness_error: None,
    };
    let target = match input {
        Input::Points { points, .. } => {
            out.certificate = Some(if minimal {
                is_minimally_terracini(field, points, d, opts.exec)?
            } else {
                is_t1(field, points, d)?
            });
            if out.cohomology.h1 == 0 {
                return Ok(out);
            }
            let c = find_critical(field, points, d)?;
            let s = c.scheme.clone();
            out.critical = Some(c);
            s
        }
        Input::Scheme { .. } if out.cohomology.h1 > 0 => z,
        Input::Scheme { .. } => return Ok(out),
    };
    if matches!(target.ambient_dim(), 2 | 3) {
        match classify_with(field, &target, d, opts) {
            Ok(w) => out.witness = Some(w),
            Err(e) => out.witness_error = Some(e.to_string()),
        }
    }
    Ok(out)
}

/// Reads `path` and runs [`check_input`] on it.
pub fn check_scheme(path: &Path, d: usize, prime: Option<u64>, minimal: bool, opts: &WitnessOptions) -> Result<CheckOutcome, HarnessError> {
    let text = std::fs::read_to_string(path)?;
    check_input(&load_input(&text, prime)?, d, minimal, opts)
}

pub fn write_json<T: Serialize>(value: &T, mut w: impl Write) -> Result<(), HarnessError> {
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| HarnessError::Io(e.into()))?;
    writeln!(w)?;
    Ok(())
}

/// One row per cell.
pub fn write_csv(report: &SuiteReport, w: impl Write) -> Result<(), HarnessError> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record([
        "suite",
        "n",
        "d",
        "x",
        "kind",
        "members",
        "members_ok",
        "trials",
        "terracini_hits",
        "failed_checks",
        "retries",
        "timing_ms",
    ])?;
    for c in &report.cells {
        let kind = serde_json::to_value(c.kind)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default();
        out.write_record([
            report.suite.to_string(),
            c.n.to_string(),
            c.d.to_string(),
            c.x.to_string(),
            kind,
            c.members.len().to_string(),
            c.members.iter().filter(|m| m.ok).count().to_string(),
            c.trials.len().to_string(),
            c.terracini_hits().to_string(),
            c.checks.iter().filter(|k| !k.holds).count().to_string(),
            c.retries.to_string(),
            c.timing_ms.to_string(),
        ])?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_array_and_object_agree() {
        let a = load_input("[[1,0,0],[0,1,0],[0,0,1]]", None).unwrap();
        let b = load_input(r#"{"n": 2, "points": [[1,0,0],[0,1,0],[0,0,1]]}"#, None).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn parse_errors_carry_position() {
        match load_input("{\n  \"points\": [[1,0,0],\n  oops]\n}", None) {
            Err(HarnessError::Parse { line, column, .. }) => {
                assert_eq!(line, 3);
                assert!(column > 0);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn ragged_points_are_rejected() {
        assert!(matches!(load_input("[[1,0,0],[0,1]]", None), Err(HarnessError::Parse { .. })));
    }

    #[test]
    fn collinear_points_get_a_line() {
        let pts: Vec<String> = (1..=6).map(|t| format!("[1,{t},0]")).collect();
        let input = load_input(&format!("[{}]", pts.join(",")), None).unwrap();
        let out = check_input(&input, 4, true, &WitnessOptions::default()).unwrap();
        assert!(out.cohomology.h1 > 0);
        assert!(out.witness.is_some(), "{:?}", out.witness_error);
    }

    #[test]
    fn scheme_input_round_trips() {
        let input = load_input(r#"{"n":2,"components":[{"kind":"double","point":[1,0,0]}]}"#, None).unwrap();
        let out = check_input(&input, 2, false, &WitnessOptions::default()).unwrap();
        assert_eq!((out.cohomology.h0, out.cohomology.h1), (3, 0));
    }
}
