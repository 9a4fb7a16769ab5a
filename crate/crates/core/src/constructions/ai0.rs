//! Terracini sets of the minimal possible size and above.
//!
//! Every configuration lies in the singular locus of a reducible
//! hypersurface of degree `d`, which keeps `h0 > 0`, and contains enough
//! collinear (or coplanar, for cubics) points to force `h1 > 0`. Coordinates
//! are chosen so that `H = {x0 = 0}`, `K = {x1 = 0}`, `U = {x2 = 0}`; the
//! result is moved by a random projective transformation.

use rand::Rng;

use super::{nonzero, ConstructionError};
use crate::linalg::PrimeField;
use crate::projgeom::{Point, ProjectiveTransform, Subspace};
use crate::seed;

fn random_vec(field: PrimeField, n: usize, rng: &mut impl Rng) -> Vec<u64> {
    (0..=n).map(|_| rng.gen_range(0..field.modulus())).collect()
}

/// A random point with the listed coordinates zero and `keep` nonzero.
fn point_with(field: PrimeField, n: usize, zero: &[usize], keep: &[usize], rng: &mut impl Rng) -> Point {
    let mut v = random_vec(field, n, rng);
    for &i in zero {
        v[i] = 0;
    }
    for &i in keep {
        v[i] = nonzero(field, rng);
    }
    Point::new(field, v).expect("a kept coordinate is nonzero")
}

/// `x` points of `P^n` forming a Terracini set for degree `d`, following the
/// three shapes: `n = 2`; `n >= 3, d = 3`; `n >= 3, d >= 4`.
pub fn ai0_witness(field: PrimeField, n: usize, d: usize, x: usize, seed: u64) -> Result<Vec<Point>, ConstructionError> {
    if n < 2 || d < 3 || (n, d) == (2, 3) || x < n + d.div_ceil(2) {
        return Err(ConstructionError::ParameterOutOfTheoremRange(format!(
            "need n >= 2, d >= 3, (n, d) != (2, 3) and x >= n + ⌈d/2⌉, got n={n} d={d} x={x}"
        )));
    }
    let mut rng = seed::rng(seed);
    loop {
        let pts = if n == 2 {
            plane_shape(field, x, &mut rng)
        } else if d == 3 {
            cubic_shape(field, n, x, &mut rng)
        } else {
            hyperplane_shape(field, n, x, &mut rng)
        };
        if super::all_distinct(&pts) {
            let t = ProjectiveTransform::random(field, n, &mut rng);
            return Ok(pts.iter().map(|p| t.apply(field, p)).collect());
        }
    }
}

/// `G = (d-2)L ∪ M ∪ N`: the point `M ∩ N` and `x - 1` points of `L` off
/// `M ∪ N`, with `L = {x2 = 0}`, `M = {x0 = 0}`, `N = {x1 = 0}`.
fn plane_shape(field: PrimeField, x: usize, rng: &mut impl Rng) -> Vec<Point> {
    let mut pts = vec![Point::coordinate_point(field, 2, 2)];
    pts.extend((1..x).map(|_| point_with(field, 2, &[2], &[0, 1], rng)));
    pts
}

/// `G = H ∪ K ∪ U`: `n - 1` points of `H ∩ K`, two of `H ∩ U`, one of
/// `K ∩ U` off `H`; further points go on `H ∩ K`.
fn cubic_shape(field: PrimeField, n: usize, x: usize, rng: &mut impl Rng) -> Vec<Point> {
    let rest: Vec<usize> = (3..=n).collect();
    let mut pts = Vec::with_capacity(x);
    let hk: Vec<usize> = [2].into_iter().chain(rest.iter().copied()).collect();
    for _ in 0..(n - 1) + (x - (n + 2)) {
        pts.push(point_with(field, n, &[0, 1], &hk, rng));
    }
    let hu: Vec<usize> = [1].into_iter().chain(rest.iter().copied()).collect();
    for _ in 0..2 {
        pts.push(point_with(field, n, &[0, 2], &hu, rng));
    }
    pts.push(point_with(field, n, &[1, 2], &[0], rng));
    pts
}

/// `G = (d-2)H ∪ K ∪ U`: `x - n + 1` points on a line of `H`, `n - 2`
/// general points of `H`, one point of `K ∩ U` off `H`.
fn hyperplane_shape(field: PrimeField, n: usize, x: usize, rng: &mut impl Rng) -> Vec<Point> {
    let h = Subspace::hyperplane(field, Point::coordinate_point(field, n, 0).coords()).expect("coordinate hyperplane");
    let line = Subspace::span_of_points(field, &[h.random_point(field, rng), h.random_point(field, rng)]).expect("two points span");
    let mut pts: Vec<Point> = (0..x - n + 1).map(|_| line.random_point(field, rng)).collect();
    pts.extend((0..n - 2).map(|_| h.random_point(field, rng)));
    pts.push(point_with(field, n, &[1, 2], &[0], rng));
    pts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parallel::Exec;
    use crate::terracini::{is_minimally_terracini, is_terracini};

    fn fld() -> PrimeField {
        PrimeField::default_field()
    }

    #[test]
    fn plane_quintics_five_points() {
        let pts = ai0_witness(fld(), 2, 5, 5, 1).unwrap();
        assert!(is_terracini(fld(), &pts, 5).unwrap().terracini);
    }

    #[test]
    fn cubics_in_p3_not_minimal() {
        let pts = ai0_witness(fld(), 3, 3, 5, 2).unwrap();
        let c = is_minimally_terracini(fld(), &pts, 3, Exec::Sequential).unwrap();
        assert!(c.terracini);
        assert_eq!(c.minimal, Some(false));
    }

    #[test]
    fn sextics_in_p3_six_points() {
        let pts = ai0_witness(fld(), 3, 6, 6, 3).unwrap();
        assert!(is_terracini(fld(), &pts, 6).unwrap().terracini);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(ai0_witness(fld(), 2, 3, 6, 0).is_err());
        assert!(ai0_witness(fld(), 3, 6, 5, 0).is_err());
        assert!(ai0_witness(fld(), 1, 6, 9, 0).is_err());
        assert!(ai0_witness(fld(), 3, 2, 9, 0).is_err());
    }
}
