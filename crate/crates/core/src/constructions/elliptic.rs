//! Points on an elliptic quartic `C = Q ∩ Q'` of `P^3`.
//!
//! `Q = x0 x3 - x1 x2` is the image of `P^1 × P^1` under the Segre map, and
//! `Q'` pulls back to a form `g(s, t)` of bidegree `(2, 2)`. For fixed `s`,
//! `g` is a quadratic in `t`, which gives rational points through square
//! roots. A plane through three points of `C` meets it in a fourth, found by
//! dividing the pulled-back quartic by the three known roots. Cutting with
//! `d/2` such planes puts `S` in `|O_C(d/2)|`, so `2S ∩ C ∈ |O_C(d)|`.

use rand::Rng;

use super::{all_distinct, transform_rows, ConstructionError, CurveKind, CurveSpec, Sample};
use crate::linalg::{Matrix, PrimeField};
use crate::projgeom::{evaluate_with_gradient, Hypersurface, MonomialBasis, Point, ProjectiveTransform};
use crate::seed;

const ATTEMPTS: u32 = 64;

/// A point of `C` with its affine parameters `s = (1, σ)`, `t = (u, 1)`.
#[derive(Debug, Clone)]
struct CurvePoint {
    sigma: u64,
    u: u64,
    point: Point,
}

fn segre(field: PrimeField, s: (u64, u64), t: (u64, u64)) -> Vec<u64> {
    vec![field.mul(s.0, t.0), field.mul(s.0, t.1), field.mul(s.1, t.0), field.mul(s.1, t.1)]
}

pub(crate) struct QuarticModel {
    q: Hypersurface,
    q2: Hypersurface,
}

impl QuarticModel {
    /// `Q` and a second quadric through 8 random points of `Q`.
    pub(crate) fn random(field: PrimeField, rng: &mut impl Rng) -> Self {
        let q = Hypersurface::from_terms(field, 3, 2, &[(vec![1, 0, 0, 1], 1), (vec![0, 1, 1, 0], field.neg(1))]).expect("nonzero quadric");
        let basis = MonomialBasis::new(3, 2);
        loop {
            let rows: Vec<Vec<u64>> = (0..8)
                .map(|_| {
                    let s = (1, rng.gen_range(0..field.modulus()));
                    let t = (rng.gen_range(0..field.modulus()), 1);
                    basis.evaluation_row(field, &segre(field, s, t))
                })
                .collect();
            let ker = Matrix::from_rows(field, basis.len(), &rows).right_kernel();
            let coeffs = ker.iter().fold(vec![0u64; basis.len()], |acc, v| {
                let c = rng.gen_range(0..field.modulus());
                acc.iter().zip(v).map(|(&a, &b)| field.add(a, field.mul(c, b))).collect()
            });
            let Ok(q2) = Hypersurface::new(field, 3, 2, coeffs) else { continue };
            let pencil = Matrix::from_rows(field, basis.len(), &[q.coeffs().to_vec(), q2.coeffs().to_vec()]);
            if pencil.rank() == 2 {
                return Self { q, q2 };
            }
        }
    }

    fn g(&self, field: PrimeField, s: (u64, u64), t: (u64, u64)) -> u64 {
        self.q2.value(field, &segre(field, s, t))
    }

    /// Points of `C` over `s = (1, σ)`.
    fn fibre(&self, field: PrimeField, sigma: u64) -> Vec<CurvePoint> {
        let s = (1, sigma);
        let a = self.g(field, s, (1, 0));
        let c = self.g(field, s, (0, 1));
        let b = field.sub(field.sub(self.g(field, s, (1, 1)), a), c);
        if a == 0 {
            return Vec::new();
        }
        let disc = field.sub(field.mul(b, b), field.mul(4, field.mul(a, c)));
        let Some(r) = field.sqrt(disc) else {
            return Vec::new();
        };
        let inv2a = field.inv(field.mul(2, a));
        let mut roots = vec![field.mul(field.sub(r, b), inv2a)];
        if r != 0 {
            roots.push(field.mul(field.sub(field.neg(r), b), inv2a));
        }
        roots
            .into_iter()
            .filter_map(|u| {
                Point::new(field, segre(field, s, (u, 1)))
                    .ok()
                    .map(|point| CurvePoint { sigma, u, point })
            })
            .collect()
    }

    fn random_point(&self, field: PrimeField, rng: &mut impl Rng) -> Option<CurvePoint> {
        let pts = self.fibre(field, rng.gen_range(0..field.modulus()));
        let k = pts.len();
        (k > 0).then(|| pts[rng.gen_range(0..k)].clone())
    }

    /// Both quadrics vanish and their gradients are independent.
    fn smooth_at(&self, field: PrimeField, p: &Point) -> bool {
        let (v1, g1) = evaluate_with_gradient(field, &self.q, p).expect("dimensions match");
        let (v2, g2) = evaluate_with_gradient(field, &self.q2, p).expect("dimensions match");
        v1 == 0 && v2 == 0 && Matrix::from_rows(field, 4, &[g1, g2]).rank() == 2
    }

    /// The fourth point of `C` on the plane through three of its points.
    fn fourth_point(&self, field: PrimeField, tri: &[CurvePoint]) -> Option<CurvePoint> {
        let rows: Vec<Vec<u64>> = tri.iter().map(|c| c.point.coords().to_vec()).collect();
        let ker = Matrix::from_rows(field, 4, &rows).right_kernel();
        if ker.len() != 1 {
            return None;
        }
        let h = &ker[0];
        // on s = (1, σ) the plane forces t = (h1 + h3 σ, -(h0 + h2 σ))
        let t_of = |sig: u64| (field.add(h[1], field.mul(h[3], sig)), field.neg(field.add(h[0], field.mul(h[2], sig))));
        let samples: Vec<(u64, u64)> = (0..5u64).map(|sg| (sg, self.g(field, (1, sg), t_of(sg)))).collect();
        let mut quot = interpolate(field, &samples)?;
        for c in tri {
            quot = divide_root(field, &quot, c.sigma)?;
        }
        // quot = q0 + q1 σ
        let (q0, q1) = (quot[0], *quot.get(1).unwrap_or(&0));
        if q1 == 0 || quot.iter().skip(2).any(|&c| c != 0) {
            return None;
        }
        let sigma = field.neg(field.mul(q0, field.inv(q1)));
        if tri.iter().any(|c| c.sigma == sigma) {
            return None;
        }
        let t = t_of(sigma);
        let point = Point::new(field, segre(field, (1, sigma), t)).ok()?;
        if t.1 == 0 {
            return None;
        }
        let u = field.mul(t.0, field.inv(t.1));
        Some(CurvePoint { sigma, u, point })
    }
}

/// Coefficients (low degree first) of the polynomial through the samples.
fn interpolate(field: PrimeField, samples: &[(u64, u64)]) -> Option<Vec<u64>> {
    let k = samples.len();
    let mut data = Vec::with_capacity(k * k);
    for &(x, _) in samples {
        let mut acc = 1;
        for _ in 0..k {
            data.push(acc);
            acc = field.mul(acc, x);
        }
    }
    let v = Matrix::from_data(field, k, k, data).ok()?.inverse()?;
    let ys: Vec<u64> = samples.iter().map(|&(_, y)| y).collect();
    Some(v.mul_vec(&ys))
}

/// Quotient by `(σ - r)`, or `None` if `r` is not a root.
fn divide_root(field: PrimeField, poly: &[u64], r: u64) -> Option<Vec<u64>> {
    let deg = poly.len().checked_sub(1)?;
    let mut quot = vec![0u64; deg.max(1)];
    let mut carry = 0u64;
    for i in (0..=deg).rev() {
        let c = field.add(poly[i], field.mul(carry, r));
        if i == 0 {
            return (c == 0).then_some(quot);
        }
        quot[i - 1] = c;
        carry = c;
    }
    None
}

/// `2d` points of a smooth elliptic quartic cut by a surface of degree
/// `d/2` (a union of planes), for even `d >= 6`.
pub fn elliptic_quartic_points(field: PrimeField, d: usize, seed: u64) -> Result<Sample, ConstructionError> {
    if d < 6 || d % 2 == 1 {
        return Err(ConstructionError::ParameterOutOfTheoremRange(format!(
            "elliptic construction covers even d >= 6, got d={d}"
        )));
    }
    let mut rng = seed::rng(seed);
    let model = QuarticModel::random(field, &mut rng);
    let k = d / 2;
    for attempt in 0..ATTEMPTS {
        let base = distinct_curve_points(field, &model, 3 * k, &mut rng);
        let mut pts: Vec<Point> = Vec::with_capacity(4 * k);
        let mut ok = true;
        for tri in base.chunks(3) {
            match model.fourth_point(field, tri) {
                Some(c) => pts.extend(tri.iter().map(|c| c.point.clone()).chain([c.point])),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok || !all_distinct(&pts) {
            continue;
        }
        if !pts.iter().all(|p| model.smooth_at(field, p)) {
            return Err(ConstructionError::SmoothnessCertificationFailed(attempt + 1));
        }
        return Ok(finish(field, &model, pts, true, attempt, &mut rng));
    }
    Err(ConstructionError::TransversalityFailed(ATTEMPTS))
}

/// `x` free points of a smooth elliptic quartic.
pub fn elliptic_free_points(field: PrimeField, x: usize, seed: u64) -> Result<Sample, ConstructionError> {
    elliptic_free_with(field, x, &mut seed::rng(seed))
}

pub(crate) fn elliptic_free_with(field: PrimeField, x: usize, rng: &mut impl Rng) -> Result<Sample, ConstructionError> {
    let model = QuarticModel::random(field, rng);
    let pts: Vec<Point> = distinct_curve_points(field, &model, x, rng).into_iter().map(|c| c.point).collect();
    if !pts.iter().all(|p| model.smooth_at(field, p)) {
        return Err(ConstructionError::SmoothnessCertificationFailed(1));
    }
    Ok(finish(field, &model, pts, false, 0, rng))
}

/// Points with pairwise distinct `σ` and `u`, so no two share a ruling.
fn distinct_curve_points(field: PrimeField, model: &QuarticModel, k: usize, rng: &mut impl Rng) -> Vec<CurvePoint> {
    let mut out: Vec<CurvePoint> = Vec::with_capacity(k);
    while out.len() < k {
        if let Some(c) = model.random_point(field, rng) {
            if out.iter().all(|o| o.sigma != c.sigma && o.u != c.u) {
                out.push(c);
            }
        }
    }
    out
}

fn finish(field: PrimeField, model: &QuarticModel, pts: Vec<Point>, linked: bool, retries: u32, rng: &mut impl Rng) -> Sample {
    let t = ProjectiveTransform::random(field, 3, rng);
    let x = pts.len();
    Sample {
        spec: CurveSpec {
            kind: CurveKind::EllipticQuartic,
            n: 3,
            degree: 4,
            transform: transform_rows(&t),
            equations: vec![model.q.transformed(field, &t), model.q2.transformed(field, &t)],
            parameters: Vec::new(),
            segments: Vec::new(),
            linked,
        },
        points: pts.iter().map(|p| t.apply(field, p)).collect(),
        smooth: vec![true; x],
        retries,
    }
}
