//! Point configurations on curves, plus the expected curve-side `h1`.
//!
//! Every generator is a pure function of its parameters and seed. Model
//! curves are built in convenient coordinates and then moved by a random
//! projective transformation, which is stored in the returned spec.

pub mod ai0;
pub mod cubic;
pub mod elliptic;
pub mod families;
pub mod reducible;
pub mod rnc;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::PrimeField;
use crate::projgeom::{GeomError, Hypersurface, Point, ProjectiveTransform};

pub use ai0::ai0_witness;
pub use cubic::{plane_cubic_points, PlaneCubicMode};
pub use elliptic::elliptic_quartic_points;
pub use reducible::reducible_rnc_points;
pub use rnc::rnc_points;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("parameters outside the range of the construction: {0}")]
    ParameterOutOfTheoremRange(String),
    #[error("requested {requested} points on the singular locus, only {available} nodes exist")]
    SingularSamplingRequestedButImpossible { requested: usize, available: usize },
    #[error("could not certify a smooth curve after {0} attempts")]
    SmoothnessCertificationFailed(u32),
    #[error("could not find a transversal section after {0} attempts")]
    TransversalityFailed(u32),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveKind {
    Rnc,
    ReducibleRnc { chain: Vec<usize> },
    SmoothConic,
    PlaneCubic,
    EllipticQuartic,
}

impl CurveKind {
    pub fn genus(&self) -> usize {
        match self {
            CurveKind::PlaneCubic | CurveKind::EllipticQuartic => 1,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CurveSpec {
    #[serde(flatten)]
    pub kind: CurveKind,
    pub n: usize,
    pub degree: usize,
    /// Rows of the matrix taking model coordinates to final coordinates.
    pub transform: Vec<Vec<u64>>,
    /// Defining forms in final coordinates, when the curve is a complete
    /// intersection that was written down explicitly.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub equations: Vec<Hypersurface>,
    /// Parameter of each sampled point on its (segment of the) model curve.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parameters: Vec<u64>,
    /// Segment index of each sampled point (reducible curves only).
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub segments: Vec<usize>,
    /// The points are cut on the curve by a hypersurface of degree `d/2`,
    /// so `2S ∩ C` is a divisor of `O_C(d)`.
    pub linked: bool,
}

/// A sampled configuration with its curve.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sample {
    pub spec: CurveSpec,
    pub points: Vec<Point>,
    /// Whether each point avoids the singular locus of the curve.
    pub smooth: Vec<bool>,
    /// Re-samplings spent on genericity failures.
    pub retries: u32,
}

/// Expected `h1(I_{2S∩C, C}(d))` from Riemann–Roch on the curve, when the
/// curve is smooth and `S` avoids nothing special. `None` for reducible
/// curves.
pub fn curve_side_oracle(spec: &CurveSpec, x: usize, d: usize) -> Option<usize> {
    let e = (spec.degree * d) as i64 - 2 * x as i64;
    match spec.kind.genus() {
        _ if matches!(spec.kind, CurveKind::ReducibleRnc { .. }) => None,
        0 => Some((-e - 1).max(0) as usize),
        _ => Some(match e {
            0 if spec.linked => 1,
            0 => 0,
            e if e > 0 => 0,
            e => (-e) as usize,
        }),
    }
}

pub(crate) fn nonzero(field: PrimeField, rng: &mut impl Rng) -> u64 {
    rng.gen_range(1..field.modulus())
}

/// `k` distinct nonzero field elements.
pub(crate) fn distinct_nonzero(field: PrimeField, k: usize, rng: &mut impl Rng) -> Vec<u64> {
    let mut out: Vec<u64> = Vec::with_capacity(k);
    while out.len() < k {
        let t = nonzero(field, rng);
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

pub(crate) fn transform_rows(t: &ProjectiveTransform) -> Vec<Vec<u64>> {
    (0..t.matrix().rows()).map(|r| t.matrix().row(r).to_vec()).collect()
}

pub(crate) fn all_distinct(points: &[Point]) -> bool {
    let mut seen = std::collections::HashSet::new();
    points.iter().all(|p| seen.insert(p))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(kind: CurveKind, n: usize, degree: usize, linked: bool) -> CurveSpec {
        CurveSpec {
            kind,
            n,
            degree,
            transform: Vec::new(),
            equations: Vec::new(),
            parameters: Vec::new(),
            segments: Vec::new(),
            linked,
        }
    }

    #[test]
    fn rational_curve_side_values() {
        assert_eq!(curve_side_oracle(&spec(CurveKind::Rnc, 3, 3, false), 12, 7), Some(2));
        assert_eq!(curve_side_oracle(&spec(CurveKind::SmoothConic, 2, 2, false), 5, 4), Some(1));
        assert_eq!(curve_side_oracle(&spec(CurveKind::Rnc, 3, 3, false), 11, 7), Some(0));
    }

    #[test]
    fn elliptic_curve_side_values() {
        let linked = spec(CurveKind::EllipticQuartic, 3, 4, true);
        assert_eq!(curve_side_oracle(&linked, 12, 6), Some(1));
        let free = spec(CurveKind::EllipticQuartic, 3, 4, false);
        assert_eq!(curve_side_oracle(&free, 11, 6), Some(0));
        assert_eq!(curve_side_oracle(&free, 13, 6), Some(2));
        assert_eq!(curve_side_oracle(&spec(CurveKind::PlaneCubic, 2, 3, false), 11, 7), Some(1));
    }

    #[test]
    fn reducible_has_no_closed_form() {
        let s = spec(CurveKind::ReducibleRnc { chain: vec![1, 2] }, 3, 3, false);
        assert_eq!(curve_side_oracle(&s, 12, 7), None);
    }
}
