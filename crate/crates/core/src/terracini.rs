//! Membership in the Terracini loci and the bounds satisfied by members.
//!
//! A set `S ⊂ P^n` is in `T1` when `h0(I_2S(d)) > 0` and `h1(I_2S(d)) > 0`,
//! Terracini when moreover `S` spans `P^n`, and minimally Terracini when in
//! addition every proper subset has `h1 = 0`. By monotonicity of `h1` in the
//! scheme it is enough to look at the `x` subsets of size `x - 1`.

use serde::Serialize;
use thiserror::Error;

use crate::cohomology::{condition_rows, CohomologyError};
use crate::linalg::PrimeField;
use crate::parallel::{par_map_range, Exec};
use crate::projgeom::{monomial_count, span_dim, GeomError, Point};
use crate::schemes::{double_scheme, SchemeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TerraciniError {
    #[error("point set is empty")]
    EmptyInput,
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipCertificate {
    pub n: usize,
    pub d: usize,
    pub x: usize,
    pub prime: u64,
    pub points: Vec<Point>,
    pub h0: usize,
    pub h1: usize,
    pub span_dim: usize,
    pub t1: bool,
    pub terracini: bool,
    /// `None` when minimality was not examined.
    pub minimal: Option<bool>,
    /// Entry `i` is `h1` of the double scheme on `S` minus its `i`-th point.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub subset_h1: Vec<usize>,
    /// Indices into `points` of a proper subset with positive `h1`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violating_subset: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl MembershipCertificate {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal == Some(true)
    }

    /// The verdict implications every certificate must satisfy.
    pub fn is_consistent(&self) -> bool {
        let t_ok = !self.terracini || (self.t1 && self.span_dim == self.n);
        let m_ok = !self.is_minimal() || (self.terracini && self.subset_h1.len() == self.x && self.subset_h1.iter().all(|&h| h == 0));
        let t1_ok = self.t1 == (self.h0 > 0 && self.h1 > 0);
        t_ok && m_ok && t1_ok
    }
}

/// `⌈(C(n+d, n) + 1) / (n + 1)⌉`, the largest size a minimally Terracini set
/// can have.
pub fn rho(n: usize, d: usize) -> usize {
    (monomial_count(n, d) + 1).div_ceil(n + 1)
}

fn base_certificate(field: PrimeField, points: &[Point], d: usize) -> Result<MembershipCertificate, TerraciniError> {
    let first = points.first().ok_or(TerraciniError::EmptyInput)?;
    let n = first.ambient_dim();
    let z = double_scheme(points)?;
    let m = condition_rows(field, &z, d)?;
    let rank = m.rank();
    let h0 = monomial_count(n, d) - rank;
    let h1 = z.degree() - rank;
    let sd = span_dim(field, points)?;
    let t1 = h0 > 0 && h1 > 0;
    Ok(MembershipCertificate {
        n,
        d,
        x: points.len(),
        prime: field.modulus(),
        points: points.to_vec(),
        h0,
        h1,
        span_dim: sd,
        t1,
        terracini: t1 && sd == n,
        minimal: None,
        subset_h1: Vec::new(),
        violating_subset: None,
        seed: None,
    })
}

pub fn is_t1(field: PrimeField, points: &[Point], d: usize) -> Result<MembershipCertificate, TerraciniError> {
    base_certificate(field, points, d)
}

pub fn is_terracini(field: PrimeField, points: &[Point], d: usize) -> Result<MembershipCertificate, TerraciniError> {
    base_certificate(field, points, d)
}

/// `h1` of `2(S ∖ {p_i})` for every `i`.
pub fn maximal_subset_h1(field: PrimeField, points: &[Point], d: usize, exec: Exec) -> Result<Vec<usize>, TerraciniError> {
    let z = double_scheme(points)?;
    let m = condition_rows(field, &z, d)?;
    let block = points.first().ok_or(TerraciniError::EmptyInput)?.ambient_dim() + 1;
    let x = points.len();
    Ok(par_map_range(x, exec, |skip| {
        let rows: Vec<usize> = (0..x).filter(|&i| i != skip).flat_map(|i| i * block..(i + 1) * block).collect();
        rows.len() - m.select_rows(&rows).rank()
    }))
}

/// The lowest index `i` with `h1(2(S ∖ {p_i}), d) > 0`, and that `h1`.
/// Stops at the first hit.
pub fn first_violating_subset(field: PrimeField, points: &[Point], d: usize) -> Result<Option<(usize, usize)>, TerraciniError> {
    let z = double_scheme(points)?;
    let m = condition_rows(field, &z, d)?;
    let block = points.first().ok_or(TerraciniError::EmptyInput)?.ambient_dim() + 1;
    let x = points.len();
    for skip in 0..x {
        let rows: Vec<usize> = (0..x).filter(|&i| i != skip).flat_map(|i| i * block..(i + 1) * block).collect();
        let h = rows.len() - m.select_rows(&rows).rank();
        if h > 0 {
            return Ok(Some((skip, h)));
        }
    }
    Ok(None)
}

/// Terracini verdict plus the `x` maximal-subset checks. Minimality is only
/// examined for Terracini sets; a violating subset, when found, is the one
/// omitting the lowest-index point.
pub fn is_minimally_terracini(field: PrimeField, points: &[Point], d: usize, exec: Exec) -> Result<MembershipCertificate, TerraciniError> {
    let mut cert = base_certificate(field, points, d)?;
    if !cert.terracini {
        cert.minimal = Some(false);
        return Ok(cert);
    }
    let subset_h1 = maximal_subset_h1(field, points, d, exec)?;
    let bad = subset_h1.iter().position(|&h| h > 0);
    cert.minimal = Some(bad.is_none());
    cert.violating_subset = bad.map(|skip| (0..points.len()).filter(|&i| i != skip).collect());
    cert.subset_h1 = subset_h1;
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub value: usize,
    pub limit: usize,
    pub holds: bool,
}

impl BoundCheck {
    fn at_most(name: &str, value: usize, limit: usize) -> Self {
        Self {
            name: name.to_string(),
            value,
            limit,
            holds: value <= limit,
        }
    }
}

/// Bounds every minimally Terracini set satisfies: `h1 <= n + 1`,
/// `h1(I_2S(d + 1)) = 0` and `x <= rho(n, d)`.
pub fn check_member_bounds(field: PrimeField, cert: &MembershipCertificate) -> Result<Vec<BoundCheck>, TerraciniError> {
    let z = double_scheme(&cert.points)?;
    let next = z.degree() - condition_rows(field, &z, cert.d + 1)?.rank();
    Ok(vec![
        BoundCheck::at_most("h1_at_most_n_plus_1", cert.h1, cert.n + 1),
        BoundCheck::at_most("h1_vanishes_in_next_degree", next, 0),
        BoundCheck::at_most("size_at_most_rho", cert.x, rho(cert.n, cert.d)),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeom::{random_point, Subspace};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fld() -> PrimeField {
        PrimeField::default_field()
    }

    fn general(n: usize, k: usize, seed: u64) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..k).map(|_| random_point(fld(), n, &mut rng)).collect()
    }

    fn on_line(n: usize, k: usize, seed: u64) -> Vec<Point> {
        let f = fld();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let line = Subspace::span_of_points(f, &general(n, 2, seed ^ 99)).unwrap();
        (0..k).map(|_| line.random_point(f, &mut rng)).collect()
    }

    #[test]
    fn collinear_points_are_t1() {
        // ⌈5/2⌉ + 1 = 4 points on a line, d = 5
        let c = is_t1(fld(), &on_line(3, 4, 1), 5).unwrap();
        assert!(c.t1);
        assert!(!c.terracini);
        assert_eq!(c.span_dim, 1);
    }

    #[test]
    fn quadrics_never_give_terracini_sets() {
        for x in 3..9 {
            let c = is_terracini(fld(), &general(2, x, x as u64), 2).unwrap();
            assert!(!c.terracini);
        }
    }

    #[test]
    fn single_point_not_t1() {
        for d in 2..6 {
            assert!(!is_t1(fld(), &general(3, 1, 3), d).unwrap().t1);
        }
    }

    #[test]
    fn too_few_points_never_span() {
        for x in 1..=3 {
            let c = is_terracini(fld(), &general(3, x, 4), 4).unwrap();
            assert!(!c.terracini);
        }
    }

    #[test]
    fn five_general_plane_points_quartics() {
        let c = is_minimally_terracini(fld(), &general(2, 5, 5), 4, Exec::Sequential).unwrap();
        assert!(c.terracini && c.is_minimal());
        assert_eq!(c.subset_h1, vec![0; 5]);
        assert!(c.is_consistent());
        assert!(check_member_bounds(fld(), &c).unwrap().iter().all(|b| b.holds));
    }

    #[test]
    fn four_coplanar_plus_one_cubics_not_minimal() {
        let f = fld();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let plane = Subspace::span_of_points(f, &general(3, 3, 7)).unwrap();
        let mut pts: Vec<Point> = (0..4).map(|_| plane.random_point(f, &mut rng)).collect();
        pts.push(random_point(f, 3, &mut rng));
        let c = is_minimally_terracini(f, &pts, 3, Exec::Sequential).unwrap();
        assert!(c.terracini);
        assert_eq!(c.minimal, Some(false));
        // dropping the off-plane point leaves 4 coplanar double points
        assert!(c.subset_h1[4] > 0);
        let v = c.violating_subset.clone().unwrap();
        assert_eq!(v.len(), 4);
        assert!(c.is_consistent());
    }

    #[test]
    fn rho_values() {
        assert_eq!(rho(2, 4), 6);
        assert_eq!(rho(3, 4), 9);
        assert_eq!(rho(3, 17), 286);
    }

    #[test]
    fn parallel_and_sequential_agree() {
        let pts = general(3, 9, 8);
        let a = is_minimally_terracini(fld(), &pts, 4, Exec::Sequential).unwrap();
        let b = is_minimally_terracini(fld(), &pts, 4, Exec::Parallel).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn failure_is_monotone_along_supersets() {
        // 4 collinear points among 7: the violating subsets grow to S
        let f = fld();
        let mut pts = on_line(3, 4, 10);
        pts.extend(general(3, 3, 11));
        let d = 5;
        let base = is_t1(f, &pts[..4], d).unwrap();
        assert!(base.h1 > 0);
        for k in 5..=7 {
            assert!(is_t1(f, &pts[..k], d).unwrap().h1 >= base.h1);
        }
        let c = is_minimally_terracini(f, &pts, d, Exec::Sequential).unwrap();
        assert_eq!(c.minimal, Some(false));
    }

    #[test]
    fn early_exit_matches_full_scan() {
        let f = fld();
        let mut pts = general(3, 2, 12);
        pts.extend(on_line(3, 4, 13));
        pts.extend(general(3, 2, 14));
        let d = 5;
        let full = maximal_subset_h1(f, &pts, d, Exec::Sequential).unwrap();
        let first = full.iter().position(|&h| h > 0).map(|i| (i, full[i]));
        assert_eq!(first_violating_subset(f, &pts, d).unwrap(), first);
        assert!(first.is_some());
    }
}
