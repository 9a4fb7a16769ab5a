//! Points on a smooth plane cubic.
//!
//! The model is the Weierstrass cubic `y^2 z = x^3 + a x z^2 + b z^3` with
//! `4a^3 + 27b^2 ≠ 0`, smooth because the characteristic exceeds 3.
//! Rational points come from square roots. A complete intersection with a
//! curve of degree `k` is cut by `k` lines, each through two sampled points
//! of the cubic, whose third intersection is then rational as well.

use rand::Rng;
use serde::Serialize;

use super::{all_distinct, transform_rows, ConstructionError, CurveKind, CurveSpec, Sample};
use crate::linalg::PrimeField;
use crate::projgeom::{evaluate_with_gradient, Hypersurface, Point, ProjectiveTransform};
use crate::seed;

const ATTEMPTS: u32 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PlaneCubicMode {
    /// `d = 2k` even: `S = C ∩ T` with `T` of degree `k`, `x = 3k`.
    CompleteIntersection,
    /// `d` odd: `(3d + 1) / 2` free points of `C`.
    FreePoints,
}

pub(crate) struct Weierstrass {
    a: u64,
    b: u64,
    form: Hypersurface,
}

impl Weierstrass {
    pub(crate) fn random(field: PrimeField, rng: &mut impl Rng) -> Self {
        loop {
            let a = rng.gen_range(0..field.modulus());
            let b = rng.gen_range(0..field.modulus());
            let a3 = field.mul(field.mul(a, a), a);
            let disc = field.add(field.mul(4, a3), field.mul(27, field.mul(b, b)));
            if disc == 0 {
                continue;
            }
            // y^2 z - x^3 - a x z^2 - b z^3 in (x, y, z)
            let terms = [
                (vec![0, 2, 1], 1),
                (vec![3, 0, 0], field.neg(1)),
                (vec![1, 0, 2], field.neg(a)),
                (vec![0, 0, 3], field.neg(b)),
            ];
            let form = Hypersurface::from_terms(field, 2, 3, &terms).expect("nonzero cubic");
            return Self { a, b, form };
        }
    }

    pub(crate) fn form(&self) -> &Hypersurface {
        &self.form
    }

    /// A random affine point, or `None` when the abscissa is not a square.
    pub(crate) fn random_point(&self, field: PrimeField, rng: &mut impl Rng) -> Option<Point> {
        let x = rng.gen_range(0..field.modulus());
        let rhs = field.add(field.add(field.pow(x, 3), field.mul(self.a, x)), self.b);
        let y = field.sqrt(rhs)?;
        let y = if rng.gen_bool(0.5) { y } else { field.neg(y) };
        Point::new(field, vec![x, y, 1]).ok()
    }

    pub(crate) fn distinct_points(&self, field: PrimeField, k: usize, rng: &mut impl Rng) -> Vec<Point> {
        let mut out: Vec<Point> = Vec::with_capacity(k);
        while out.len() < k {
            if let Some(p) = self.random_point(field, rng) {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out
    }
}

/// Third intersection of the cubic with the chord through `a` and `b`, if
/// the chord is tangent at neither point.
pub(crate) fn third_point(field: PrimeField, f: &Hypersurface, a: &Point, b: &Point) -> Option<Point> {
    // f(a + s b) = s (c1 + s c2) once f(a) = f(b) = 0
    let (_, ga) = evaluate_with_gradient(field, f, a).ok()?;
    let (_, gb) = evaluate_with_gradient(field, f, b).ok()?;
    let c1 = field.dot(&ga, b.coords());
    let c2 = field.dot(&gb, a.coords());
    if c1 == 0 || c2 == 0 {
        return None;
    }
    let s = field.neg(field.mul(c1, field.inv(c2)));
    let v: Vec<u64> = a.coords().iter().zip(b.coords()).map(|(&x, &y)| field.add(x, field.mul(s, y))).collect();
    Point::new(field, v).ok()
}

/// Points of a smooth plane cubic for the even-degree complete intersection
/// or the odd-degree free construction.
pub fn plane_cubic_points(field: PrimeField, d: usize, mode: PlaneCubicMode, seed: u64) -> Result<Sample, ConstructionError> {
    let mut rng = seed::rng(seed);
    match mode {
        PlaneCubicMode::CompleteIntersection if d >= 6 && d.is_multiple_of(2) => complete_intersection(field, d / 2, &mut rng),
        PlaneCubicMode::FreePoints if d >= 7 && d % 2 == 1 => plane_cubic_free_with(field, (3 * d).div_ceil(2), &mut rng),
        _ => Err(ConstructionError::ParameterOutOfTheoremRange(format!(
            "{mode:?} needs d >= 6 even (complete intersection) or d >= 7 odd (free points), got d={d}"
        ))),
    }
}

/// `x` free points on a random smooth plane cubic.
pub fn plane_cubic_free_points(field: PrimeField, x: usize, seed: u64) -> Result<Sample, ConstructionError> {
    plane_cubic_free_with(field, x, &mut seed::rng(seed))
}

pub(crate) fn plane_cubic_free_with(field: PrimeField, x: usize, rng: &mut impl Rng) -> Result<Sample, ConstructionError> {
    let c = Weierstrass::random(field, rng);
    let pts = c.distinct_points(field, x, rng);
    Ok(finish(field, &c, pts, false, 0, rng))
}

fn complete_intersection(field: PrimeField, k: usize, rng: &mut impl Rng) -> Result<Sample, ConstructionError> {
    let c = Weierstrass::random(field, rng);
    for attempt in 0..ATTEMPTS {
        let base = c.distinct_points(field, 2 * k, rng);
        let mut pts = Vec::with_capacity(3 * k);
        let mut ok = true;
        for pair in base.chunks(2) {
            match third_point(field, c.form(), &pair[0], &pair[1]) {
                Some(t) => pts.extend([pair[0].clone(), pair[1].clone(), t]),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && all_distinct(&pts) {
            return Ok(finish(field, &c, pts, true, attempt, rng));
        }
    }
    Err(ConstructionError::TransversalityFailed(ATTEMPTS))
}

fn finish(field: PrimeField, c: &Weierstrass, pts: Vec<Point>, linked: bool, retries: u32, rng: &mut impl Rng) -> Sample {
    let t = ProjectiveTransform::random(field, 2, rng);
    let x = pts.len();
    Sample {
        spec: CurveSpec {
            kind: CurveKind::PlaneCubic,
            n: 2,
            degree: 3,
            transform: transform_rows(&t),
            equations: vec![c.form().transformed(field, &t)],
            parameters: Vec::new(),
            segments: Vec::new(),
            linked,
        },
        points: pts.iter().map(|p| t.apply(field, p)).collect(),
        smooth: vec![true; x],
        retries,
    }
}
