//! Critical schemes: minimal curvilinear subschemes of `2S` with `h1 > 0`.
//!
//! A dependence `λ` among the rows of `M(2S, d)` restricts, on each point,
//! to a functional `Σ λ_{p,i} ∂_i` evaluated at `p`, i.e. a derivative along
//! the vector `λ_p`. That turns `λ` into a scheme with components of degree
//! at most 2 whose own rows are dependent. Minimization then drops degree
//! one unit at a time while `h1` stays positive.

use serde::Serialize;
use thiserror::Error;

use crate::cohomology::{condition_rows, CohomologyError};
use crate::linalg::PrimeField;
use crate::projgeom::{GeomError, Point};
use crate::schemes::{double_scheme, Component, SchemeError, ZeroDimScheme};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CriticalError {
    #[error("kernel vector is zero")]
    ZeroKernelVector,
    #[error("kernel vector has length {got}, expected {expected}")]
    KernelLength { got: usize, expected: usize },
    #[error("scheme has h1 = 0 in degree {0}")]
    NotPositiveH1(usize),
    #[error("scheme has a component of degree {0} > 2")]
    NotCurvilinear(usize),
    #[error("minimized scheme has h1 = {0}, expected 1")]
    H1NotOne(usize),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalScheme {
    pub scheme: ZeroDimScheme,
    pub d: usize,
    pub h1: usize,
    /// Left-kernel vector the scheme was extracted from, if any.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_vector: Option<Vec<u64>>,
}

impl CriticalScheme {
    /// Whether the support of the scheme is all of `points`.
    pub fn has_full_support(&self, points: &[Point]) -> bool {
        let support = self.scheme.support();
        support.len() == points.len() && points.iter().all(|p| support.contains(p))
    }
}

fn h1_of(field: PrimeField, z: &ZeroDimScheme, d: usize) -> Result<usize, CohomologyError> {
    Ok(z.degree() - condition_rows(field, z, d)?.rank())
}

/// Curvilinear scheme read off a left-kernel vector of `M(2S, d)`.
pub fn kernel_to_curvilinear(field: PrimeField, points: &[Point], lambda: &[u64]) -> Result<ZeroDimScheme, CriticalError> {
    let n = points.first().map(Point::ambient_dim).ok_or(GeomError::EmptyInput)?;
    let block = n + 1;
    if lambda.len() != block * points.len() {
        return Err(CriticalError::KernelLength {
            got: lambda.len(),
            expected: block * points.len(),
        });
    }
    if lambda.iter().all(|&c| c == 0) {
        return Err(CriticalError::ZeroKernelVector);
    }
    let mut comps = Vec::new();
    for (p, lp) in points.iter().zip(lambda.chunks(block)) {
        if lp.iter().all(|&c| c == 0) {
            continue;
        }
        // proportional to p: the functional is a multiple of evaluation
        let comp = match Component::jet(field, p.clone(), lp.to_vec()) {
            Ok(c) => c,
            Err(GeomError::EulerDirection) => Component::Simple(p.clone()),
            Err(e) => return Err(e.into()),
        };
        comps.push(comp);
    }
    Ok(ZeroDimScheme::new(n, comps)?)
}

/// Greedy descent to a critical subscheme.
///
/// Components are visited once in order: a jet is first cut to its base
/// point, then the (possibly new) simple point is dropped, each step kept
/// only when `h1` stays positive. A rejected step stays rejected for every
/// later, smaller scheme by monotonicity, so one pass reaches the fixpoint.
pub fn minimize(field: PrimeField, z: &ZeroDimScheme, d: usize) -> Result<CriticalScheme, CriticalError> {
    if z.max_component_degree() > 2 {
        return Err(CriticalError::NotCurvilinear(z.max_component_degree()));
    }
    if h1_of(field, z, d)? == 0 {
        return Err(CriticalError::NotPositiveH1(d));
    }
    let mut cur = z.clone();
    let mut i = 0;
    while i < cur.components().len() {
        if let Component::Jet { base, .. } = &cur.components()[i] {
            let cut = cur.with_component(i, Some(Component::Simple(base.clone())));
            if h1_of(field, &cut, d)? > 0 {
                cur = cut;
            }
        }
        if matches!(cur.components()[i], Component::Simple(_)) {
            let dropped = cur.with_component(i, None);
            if h1_of(field, &dropped, d)? > 0 {
                cur = dropped;
                continue;
            }
        }
        i += 1;
    }
    let h1 = h1_of(field, &cur, d)?;
    if h1 != 1 {
        return Err(CriticalError::H1NotOne(h1));
    }
    Ok(CriticalScheme {
        scheme: cur,
        d,
        h1,
        kernel_vector: None,
    })
}

/// Whether no colength-one subscheme keeps `h1 > 0`.
pub fn is_critical(field: PrimeField, z: &ZeroDimScheme, d: usize) -> Result<bool, CriticalError> {
    if h1_of(field, z, d)? == 0 {
        return Ok(false);
    }
    for (_, w) in z.maximal_proper_subschemes() {
        if h1_of(field, &w, d)? > 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Critical scheme for `S` from the first left-kernel vector of `M(2S, d)`.
pub fn find_critical(field: PrimeField, points: &[Point], d: usize) -> Result<CriticalScheme, CriticalError> {
    let z = double_scheme(points)?;
    let profile = condition_rows(field, &z, d)?.rank_and_left_kernel();
    let lambda = profile.left_kernel_basis.into_iter().next().ok_or(CriticalError::NotPositiveH1(d))?;
    let curvi = kernel_to_curvilinear(field, points, &lambda)?;
    let mut crit = minimize(field, &curvi, d)?;
    crit.kernel_vector = Some(lambda);
    Ok(crit)
}
