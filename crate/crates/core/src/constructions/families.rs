//! Structured random configurations for emptiness searches.
//!
//! Uniform points almost never land in a Terracini locus, so searches mix in
//! configurations with many points on lines, planes, conics and rational
//! normal curves (whole or broken), on elliptic curves, and perturbations of
//! known members.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::all_distinct;
use super::cubic::plane_cubic_free_with;
use super::elliptic::elliptic_free_with;
use super::reducible::reducible_rnc_points_with;
use super::rnc::{moment_vector, rnc_points_with};
use crate::linalg::PrimeField;
use crate::projgeom::{random_point, Point, ProjectiveTransform, Subspace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Uniform,
    Collinear,
    Coplanar,
    Conic,
    RncSubset,
    ReducibleRnc,
    EllipticOrCubic,
    Perturbed,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::Uniform,
        Family::Collinear,
        Family::Coplanar,
        Family::Conic,
        Family::RncSubset,
        Family::ReducibleRnc,
        Family::EllipticOrCubic,
        Family::Perturbed,
    ];

    /// Families that can produce `x` spanning points in `P^n`.
    pub fn applicable(n: usize, x: usize) -> Vec<Family> {
        Self::ALL
            .into_iter()
            .filter(|f| match f {
                Family::Uniform => true,
                Family::Collinear => x > n,
                Family::Coplanar => n >= 3 && x > n,
                Family::Conic => n == 2 || (n > 2 && x > n),
                Family::RncSubset | Family::Perturbed => n >= 2,
                Family::ReducibleRnc => n >= 2 && x >= 2,
                Family::EllipticOrCubic => n == 2 || n == 3,
            })
            .collect()
    }

    /// Family for trial `i`, cycling through the applicable ones.
    pub fn for_trial(n: usize, x: usize, i: usize) -> Family {
        let fams = Self::applicable(n, x);
        fams[i % fams.len()]
    }
}

fn general(field: PrimeField, n: usize, k: usize, rng: &mut impl Rng) -> Vec<Point> {
    (0..k).map(|_| random_point(field, n, rng)).collect()
}

fn random_subspace(field: PrimeField, n: usize, dim: usize, rng: &mut impl Rng) -> Subspace {
    loop {
        if let Ok(s) = Subspace::span_of_points(field, &general(field, n, dim + 1, rng)) {
            if s.dim() == dim {
                return s;
            }
        }
    }
}

/// Points on a random linear subspace of dimension `dim`, the rest general.
fn augmented(field: PrimeField, n: usize, x: usize, dim: usize, k: usize, rng: &mut impl Rng) -> Vec<Point> {
    let m = random_subspace(field, n, dim, rng);
    let mut pts: Vec<Point> = (0..k).map(|_| m.random_point(field, rng)).collect();
    pts.extend(general(field, n, x - k, rng));
    pts
}

/// `x` points drawn from `family` in `P^n`, or `None` when the family does
/// not apply or a coincidence occurred (callers re-draw).
pub fn sample(field: PrimeField, family: Family, n: usize, x: usize, rng: &mut impl Rng) -> Option<Vec<Point>> {
    if !Family::applicable(n, x).contains(&family) || x == 0 {
        return None;
    }
    let pts = match family {
        Family::Uniform => general(field, n, x, rng),
        Family::Collinear => {
            let k = rng.gen_range(2..=x - (n - 1));
            augmented(field, n, x, 1, k, rng)
        }
        Family::Coplanar => {
            let k = rng.gen_range(3..=x - (n - 2));
            augmented(field, n, x, 2, k, rng)
        }
        Family::Conic => {
            let hi = if n == 2 { x } else { x - (n - 2) };
            let k = rng.gen_range(hi.min(5)..=hi);
            let plane = if n == 2 {
                Subspace::full(field, 2)
            } else {
                random_subspace(field, n, 2, rng)
            };
            let t = ProjectiveTransform::random(field, 2, rng);
            let mut pts: Vec<Point> = super::distinct_nonzero(field, k, rng)
                .into_iter()
                .map(|s| plane.lift_point(field, &t.apply_vec(&moment_vector(field, 2, s))))
                .collect();
            pts.extend(general(field, n, x - k, rng));
            pts
        }
        Family::RncSubset => {
            let k = rng.gen_range(x.min(n + 1)..=x);
            let mut pts = rnc_points_with(field, n, k, rng).ok()?.points;
            pts.extend(general(field, n, x - k, rng));
            pts
        }
        Family::ReducibleRnc => {
            let chain = random_composition(n, rng);
            let alloc = random_allocation(x, chain.len(), rng);
            reducible_rnc_points_with(field, &chain, &alloc, &[], rng).ok()?.points
        }
        Family::EllipticOrCubic => {
            if n == 2 {
                plane_cubic_free_with(field, x, rng).ok()?.points
            } else {
                elliptic_free_with(field, x, rng).ok()?.points
            }
        }
        Family::Perturbed => {
            let mut pts = rnc_points_with(field, n, x, rng).ok()?.points;
            let i = rng.gen_range(0..x);
            pts[i] = random_point(field, n, rng);
            pts
        }
    };
    all_distinct(&pts).then_some(pts)
}

/// A composition of `n` into at least two positive parts.
fn random_composition(n: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut cuts: Vec<usize> = (1..n).collect();
    cuts.shuffle(rng);
    let k = rng.gen_range(1..=cuts.len().max(1)).min(cuts.len());
    let mut chosen: Vec<usize> = cuts[..k].to_vec();
    chosen.sort_unstable();
    let mut parts = Vec::with_capacity(k + 1);
    let mut prev = 0;
    for c in chosen.into_iter().chain([n]) {
        parts.push(c - prev);
        prev = c;
    }
    parts
}

/// Counts summing to `x` over `k` segments.
fn random_allocation(x: usize, k: usize, rng: &mut impl Rng) -> Vec<usize> {
    let mut alloc = vec![0usize; k];
    for _ in 0..x {
        alloc[rng.gen_range(0..k)] += 1;
    }
    alloc
}
