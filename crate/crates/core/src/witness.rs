//! Low-degree curves explaining `h1 > 0`.
//!
//! A witness is a line `L` with `deg(Z ∩ L) >= d + 2`, a plane conic `D` with
//! `deg(Z ∩ D) >= 2d + 2`, or a plane `M` with `deg(Z ∩ M) = 3d` on which
//! `Z ∩ M` lies on a cubic and still fails to impose independent conditions
//! in degree `d`. The last kind is a necessary surrogate for a complete
//! intersection of a cubic and a degree-`d` curve.
//!
//! Line candidates are the lines through two support points and the tangent
//! lines of jets. For schemes whose components have degree at most 2 this is
//! exhaustive: a line containing a single support point meets `Z` in degree at
//! most 2, and degree 2 at one point needs a jet tangent to the line or a
//! double point, and the double point alone gives 2 < d + 2.
//!
//! Candidate planes are spanned by support triples or by a jet tangent line
//! and a further support point. A conic with `deg(Z ∩ D) >= 2d + 2 >= 4`
//! either has three non-collinear support points, or all its support points on
//! a line `L`; then `D ⊇ L`, and only the double line `2L` can beat `L`, by
//! picking up jets transverse to `L`, whose plane is a jet plane.
//!
//! Smooth conics are enumerated through 5 support points when `d >= 4` (a
//! smooth conic meets a curvilinear scheme in degree at most 2 per point, so
//! `d + 1 >= 5` support points lie on it) and through 5 condition rows of the
//! restricted scheme otherwise.

use std::collections::HashSet;

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::cohomology::{cohomology, condition_rows, condition_rows_with, CohomologyError};
use crate::linalg::{Matrix, PrimeField};
use crate::parallel::{par_map, Exec};
use crate::projgeom::{GeomError, Hypersurface, MonomialBasis, Point, Subspace};
use crate::schemes::{intersection_degree_hypersurface, intersection_degree_subspace_line, Component, SchemeError, ZeroDimScheme};

pub const DEFAULT_BUDGET: usize = 200_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("witness search runs in P^2 and P^3 only, got P^{0}")]
    UnsupportedAmbient(usize),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("no line, conic or plane cubic explains h1 > 0 (n={n}, d={d}, deg={degree}, budget exhausted: {budget_exhausted})")]
    ClassificationIncomplete {
        n: usize,
        d: usize,
        degree: usize,
        budget_exhausted: bool,
    },
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    Line,
    Conic,
    PlaneCubicCandidate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub kind: WitnessKind,
    pub n: usize,
    pub d: usize,
    /// The line itself, or the plane holding the conic or cubic.
    pub span: Subspace,
    /// Conic or cubic form in the coordinates of `span`.
    pub form: Option<Hypersurface>,
    pub achieved: usize,
    pub threshold: usize,
    /// `h1` of the restricted scheme in degree `d` (cubic candidates).
    pub restricted_h1: Option<usize>,
    /// Whether `h1(Z, d + 1) = 0`, recorded by `classify`.
    pub d_maximal: Option<bool>,
}

impl Witness {
    /// Recomputes the intersection degree from the stored data.
    pub fn recheck(&self, field: PrimeField, z: &ZeroDimScheme) -> Result<bool, WitnessError> {
        Ok(match self.kind {
            WitnessKind::Line => intersection_degree_subspace_line(field, z, &self.span) >= self.threshold,
            WitnessKind::Conic => {
                let zm = z.restrict_to(field, &self.span);
                let form = self
                    .form
                    .as_ref()
                    .ok_or_else(|| WitnessError::Precondition("conic without form".into()))?;
                form.degree() == 2 && intersection_degree_hypersurface(field, &zm, form)? >= self.threshold
            }
            WitnessKind::PlaneCubicCandidate => {
                let zm = z.restrict_to(field, &self.span);
                let form = self
                    .form
                    .as_ref()
                    .ok_or_else(|| WitnessError::Precondition("cubic without form".into()))?;
                zm.degree() == self.threshold
                    && form.degree() == 3
                    && intersection_degree_hypersurface(field, &zm, form)? == zm.degree()
                    && cohomology(field, &zm, self.d)?.h1 > 0
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WitnessOptions {
    /// Maximum number of smooth-conic subsets examined over all planes.
    pub budget: usize,
    pub exec: Exec,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            exec: Exec::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConicSearch {
    pub witness: Option<Witness>,
    pub planes_examined: usize,
    pub planes_skipped: usize,
    pub subsets_examined: usize,
    pub budget_exhausted: bool,
}

fn normalized(field: PrimeField, mut v: Vec<u64>) -> Vec<u64> {
    if let Some(&lead) = v.iter().find(|&&c| c != 0) {
        let inv = field.inv(lead);
        for c in v.iter_mut() {
            *c = field.mul(*c, inv);
        }
    }
    v
}

fn push_unique<T: Clone + Eq + std::hash::Hash>(seen: &mut HashSet<T>, out: &mut Vec<T>, item: T) {
    if seen.insert(item.clone()) {
        out.push(item);
    }
}

/// Candidate lines in order: support pairs, then jet tangents.
fn candidate_lines(field: PrimeField, z: &ZeroDimScheme) -> Vec<Subspace> {
    let support = z.support();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (a, b) in support.iter().tuple_combinations() {
        if let Ok(l) = Subspace::span_of_points(field, &[a.clone(), b.clone()]) {
            push_unique(&mut seen, &mut out, l);
        }
    }
    for c in z.components() {
        if let Component::Jet { base, direction } = c {
            if let Ok(l) = Subspace::spanned_by(field, &[base.coords().to_vec(), direction.coords().to_vec()]) {
                push_unique(&mut seen, &mut out, l);
            }
        }
    }
    out
}

/// The line maximizing `deg(Z ∩ L)` among the candidates, if it reaches
/// `d + 2`. Ties go to the first candidate.
pub fn find_line_witness(field: PrimeField, z: &ZeroDimScheme, d: usize) -> Option<Witness> {
    let threshold = d + 2;
    let mut best: Option<(usize, Subspace)> = None;
    for l in candidate_lines(field, z) {
        let k = intersection_degree_subspace_line(field, z, &l);
        if best.as_ref().is_none_or(|(b, _)| k > *b) {
            best = Some((k, l));
        }
    }
    let (achieved, span) = best?;
    (achieved >= threshold).then(|| Witness {
        kind: WitnessKind::Line,
        n: z.ambient_dim(),
        d,
        span,
        form: None,
        achieved,
        threshold,
        restricted_h1: None,
        d_maximal: None,
    })
}

/// Planes to search: the whole plane when `n = 2`; otherwise planes spanned
/// by support triples, then by jet tangent lines and support points.
pub fn candidate_planes(field: PrimeField, z: &ZeroDimScheme) -> Vec<Subspace> {
    if z.ambient_dim() == 2 {
        return vec![Subspace::full(field, 2)];
    }
    let support = z.support();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (a, b, c) in support.iter().tuple_combinations() {
        if let Ok(m) = Subspace::span_of_points(field, &[a.clone(), b.clone(), c.clone()]) {
            if m.dim() == 2 {
                push_unique(&mut seen, &mut out, m);
            }
        }
    }
    for comp in z.components() {
        if let Component::Jet { base, direction } = comp {
            for p in &support {
                if p == base {
                    continue;
                }
                let v = [base.coords().to_vec(), direction.coords().to_vec(), p.coords().to_vec()];
                if let Ok(m) = Subspace::spanned_by(field, &v) {
                    if m.dim() == 2 {
                        push_unique(&mut seen, &mut out, m);
                    }
                }
            }
        }
    }
    out
}

/// Linear forms of candidate lines inside a plane scheme.
fn plane_lines(field: PrimeField, zm: &ZeroDimScheme) -> Vec<(Subspace, Hypersurface)> {
    candidate_lines(field, zm)
        .into_iter()
        .filter_map(|l| {
            let eq = l.equations(field).into_iter().next()?;
            Some((l, Hypersurface::linear(field, normalized(field, eq)).ok()?))
        })
        .collect()
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Smooth-conic subsets to examine in a plane scheme.
fn conic_subset_count(zm: &ZeroDimScheme, d: usize) -> usize {
    if d >= 4 {
        let k = zm.support().len();
        if k < d + 1 {
            0
        } else {
            binomial(k, 5)
        }
    } else {
        binomial(zm.degree(), 5)
    }
}

/// Best conic in one plane, in plane coordinates, with subsets examined.
fn best_conic_in_plane(field: PrimeField, zm: &ZeroDimScheme, d: usize) -> Result<(Option<(usize, Hypersurface)>, usize), WitnessError> {
    let threshold = 2 * d + 2;
    let mut best: Option<(usize, Hypersurface)> = None;
    let consider = |form: Hypersurface, best: &mut Option<(usize, Hypersurface)>| -> Result<(), WitnessError> {
        let k = intersection_degree_hypersurface(field, zm, &form)?;
        if k >= threshold && best.as_ref().is_none_or(|(b, _)| k > *b) {
            *best = Some((k, form));
        }
        Ok(())
    };

    let lines = plane_lines(field, zm);
    let degs: Vec<usize> = lines.iter().map(|(l, _)| intersection_degree_subspace_line(field, zm, l)).collect();
    for i in 0..lines.len() {
        if 2 * degs[i] >= threshold {
            consider(lines[i].1.product(&lines[i].1, field), &mut best)?;
        }
        for j in i + 1..lines.len() {
            if degs[i] + degs[j] >= threshold {
                consider(lines[i].1.product(&lines[j].1, field), &mut best)?;
            }
        }
    }

    let basis = MonomialBasis::new(2, 2);
    let rows: Vec<Vec<u64>> = if d >= 4 {
        let support = zm.support();
        if support.len() < d + 1 {
            Vec::new()
        } else {
            support.iter().map(|p| basis.evaluation_row(field, p.coords())).collect()
        }
    } else {
        let m = condition_rows_with(field, zm, &basis);
        (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
    };
    let mut seen = HashSet::new();
    let mut examined = 0;
    for idx in (0..rows.len()).combinations(5) {
        examined += 1;
        let sub: Vec<Vec<u64>> = idx.iter().map(|&i| rows[i].clone()).collect();
        let ker = Matrix::from_rows(field, basis.len(), &sub).right_kernel();
        if ker.len() != 1 {
            continue;
        }
        let coeffs = normalized(field, ker.into_iter().next().expect("one kernel vector"));
        if !seen.insert(coeffs.clone()) {
            continue;
        }
        consider(Hypersurface::new(field, 2, 2, coeffs)?, &mut best)?;
    }
    Ok((best, examined))
}

pub fn find_conic_witness(field: PrimeField, z: &ZeroDimScheme, d: usize) -> Result<Option<Witness>, WitnessError> {
    Ok(find_conic_witness_with(field, z, d, &WitnessOptions::default())?.witness)
}

/// Conic search over candidate planes. Planes are admitted in order while
/// the cumulative subset count stays within the budget; the rest are
/// skipped and reported.
pub fn find_conic_witness_with(field: PrimeField, z: &ZeroDimScheme, d: usize, opts: &WitnessOptions) -> Result<ConicSearch, WitnessError> {
    let n = z.ambient_dim();
    if n != 2 && n != 3 {
        return Err(WitnessError::UnsupportedAmbient(n));
    }
    let threshold = 2 * d + 2;
    let planes: Vec<(Subspace, ZeroDimScheme)> = candidate_planes(field, z)
        .into_iter()
        .map(|m| {
            let zm = z.restrict_to(field, &m);
            (m, zm)
        })
        .filter(|(_, zm)| zm.degree() >= threshold)
        .collect();
    let mut admitted = Vec::new();
    let mut spent = 0usize;
    let mut skipped = 0usize;
    for p in planes {
        let cost = conic_subset_count(&p.1, d);
        if spent + cost > opts.budget {
            skipped += 1;
            continue;
        }
        spent += cost;
        admitted.push(p);
    }
    let results = par_map(&admitted, opts.exec.effective(), |(_, zm)| best_conic_in_plane(field, zm, d));
    let mut best: Option<(usize, usize, Hypersurface)> = None;
    let mut examined = 0;
    for (i, r) in results.into_iter().enumerate() {
        let (found, count) = r?;
        examined += count;
        if let Some((k, form)) = found {
            if best.as_ref().is_none_or(|(b, _, _)| k > *b) {
                best = Some((k, i, form));
            }
        }
    }
    let witness = best.map(|(achieved, i, form)| Witness {
        kind: WitnessKind::Conic,
        n,
        d,
        span: admitted[i].0.clone(),
        form: Some(form),
        achieved,
        threshold,
        restricted_h1: None,
        d_maximal: None,
    });
    Ok(ConicSearch {
        witness,
        planes_examined: admitted.len(),
        planes_skipped: skipped,
        subsets_examined: examined,
        budget_exhausted: skipped > 0,
    })
}

/// A plane `M` with `deg(Z ∩ M) = 3d`, `Z ∩ M` on a cubic of `M` and
/// `h1(Z ∩ M, d) > 0`.
pub fn find_plane_cubic_candidate(field: PrimeField, z: &ZeroDimScheme, d: usize) -> Result<Option<Witness>, WitnessError> {
    let n = z.ambient_dim();
    if n != 2 && n != 3 {
        return Err(WitnessError::UnsupportedAmbient(n));
    }
    let threshold = 3 * d;
    for m in candidate_planes(field, z) {
        let zm = z.restrict_to(field, &m);
        if zm.degree() != threshold {
            continue;
        }
        let cubics = condition_rows(field, &zm, 3)?.right_kernel();
        let Some(first) = cubics.into_iter().next() else {
            continue;
        };
        let h1 = cohomology(field, &zm, d)?.h1;
        if h1 == 0 {
            continue;
        }
        return Ok(Some(Witness {
            kind: WitnessKind::PlaneCubicCandidate,
            n,
            d,
            span: m,
            form: Some(Hypersurface::new(field, 2, 3, normalized(field, first))?),
            achieved: zm.degree(),
            threshold,
            restricted_h1: Some(h1),
            d_maximal: None,
        }));
    }
    Ok(None)
}

pub fn classify(field: PrimeField, z: &ZeroDimScheme, d: usize) -> Result<Witness, WitnessError> {
    classify_with(field, z, d, &WitnessOptions::default())
}

/// Line, then conic, then plane cubic candidate. The span of `Z` may be
/// smaller than the ambient space; maximality of `d` is recorded, not
/// required.
pub fn classify_with(field: PrimeField, z: &ZeroDimScheme, d: usize, opts: &WitnessOptions) -> Result<Witness, WitnessError> {
    let n = z.ambient_dim();
    if n != 2 && n != 3 {
        return Err(WitnessError::UnsupportedAmbient(n));
    }
    let max_deg = if n == 2 { 3 * d } else { 3 * d + 1 };
    if z.degree() > max_deg {
        return Err(WitnessError::Precondition(format!("deg Z = {} exceeds {max_deg}", z.degree())));
    }
    if n == 3 && z.max_component_degree() > 2 {
        return Err(WitnessError::Precondition("components of degree above 2".into()));
    }
    if cohomology(field, z, d)?.h1 == 0 {
        return Err(WitnessError::Precondition(format!("h1(Z, {d}) = 0")));
    }
    let d_maximal = Some(cohomology(field, z, d + 1)?.h1 == 0);
    let mut exhausted = false;
    let found = match find_line_witness(field, z, d) {
        Some(w) => Some(w),
        None => {
            let search = find_conic_witness_with(field, z, d, opts)?;
            exhausted = search.budget_exhausted;
            match search.witness {
                Some(w) => Some(w),
                None => find_plane_cubic_candidate(field, z, d)?,
            }
        }
    };
    match found {
        Some(w) => Ok(Witness { d_maximal, ..w }),
        None => Err(WitnessError::ClassificationIncomplete {
            n,
            d,
            degree: z.degree(),
            budget_exhausted: exhausted,
        }),
    }
}

/// The tangent jet of the plane curve `f = 0` at a smooth point `p`.
pub fn tangent_jet(field: PrimeField, f: &Hypersurface, p: &Point) -> Result<Component, WitnessError> {
    let (_, grad) = crate::projgeom::evaluate_with_gradient(field, f, p)?;
    let ker = Matrix::from_rows(field, grad.len(), &[grad]).right_kernel();
    for v in ker {
        if let Ok(c) = Component::jet(field, p.clone(), v) {
            return Ok(c);
        }
    }
    Err(WitnessError::Precondition("curve singular at the point".into()))
}
