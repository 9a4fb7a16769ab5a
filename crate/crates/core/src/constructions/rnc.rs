//! Points on a rational normal curve `t ↦ [1 : t : … : t^n]`.

use rand::Rng;

use super::{distinct_nonzero, transform_rows, ConstructionError, CurveKind, CurveSpec, Sample};
use crate::linalg::PrimeField;
use crate::projgeom::{Point, ProjectiveTransform};
use crate::seed;

pub(crate) fn moment_vector(field: PrimeField, n: usize, t: u64) -> Vec<u64> {
    let mut v = Vec::with_capacity(n + 1);
    let mut acc = 1;
    for _ in 0..=n {
        v.push(acc);
        acc = field.mul(acc, t);
    }
    v
}

/// `x` points with distinct parameters on a randomly placed rational normal
/// curve of `P^n`. A conic when `n = 2`.
pub fn rnc_points(field: PrimeField, n: usize, x: usize, seed: u64) -> Result<Sample, ConstructionError> {
    rnc_points_with(field, n, x, &mut seed::rng(seed))
}

pub(crate) fn rnc_points_with(field: PrimeField, n: usize, x: usize, rng: &mut impl Rng) -> Result<Sample, ConstructionError> {
    if n < 1 || x < 1 {
        return Err(ConstructionError::ParameterOutOfTheoremRange(format!(
            "rational normal curve needs n >= 1 and x >= 1, got n={n} x={x}"
        )));
    }
    let t = ProjectiveTransform::random(field, n, rng);
    let params = distinct_nonzero(field, x, rng);
    let points = params
        .iter()
        .map(|&s| Point::new(field, t.apply_vec(&moment_vector(field, n, s))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Sample {
        spec: CurveSpec {
            kind: if n == 2 { CurveKind::SmoothConic } else { CurveKind::Rnc },
            n,
            degree: n,
            transform: transform_rows(&t),
            equations: Vec::new(),
            parameters: params,
            segments: Vec::new(),
            linked: false,
        },
        smooth: vec![true; x],
        points,
        retries: 0,
    })
}
