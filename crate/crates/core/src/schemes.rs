//! Zero-dimensional schemes supported on finitely many points whose
//! components are simple points, curvilinear degree-2 jets, or full double
//! points.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::PrimeField;
use crate::projgeom::{evaluate_with_gradient, Direction, GeomError, Hypersurface, Point, Subspace};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SchemeError {
    #[error("point {0:?} appears twice in the support")]
    DuplicatePoint(Vec<u64>),
    #[error("line through two equal points")]
    DegenerateLine,
    #[error("component lives in P^{got}, scheme in P^{expected}")]
    AmbientMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error("malformed scheme json: {0}")]
    Json(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Component {
    Simple(Point),
    /// The point together with one tangent direction (degree 2).
    Jet {
        base: Point,
        direction: Direction,
    },
    /// The first infinitesimal neighbourhood of the point (degree n+1).
    Double(Point),
}

impl Component {
    pub fn base(&self) -> &Point {
        match self {
            Component::Simple(p) | Component::Double(p) => p,
            Component::Jet { base, .. } => base,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Component::Simple(_) => 1,
            Component::Jet { .. } => 2,
            Component::Double(p) => p.ambient_dim() + 1,
        }
    }

    pub fn jet(field: PrimeField, base: Point, direction: Vec<u64>) -> Result<Self, GeomError> {
        let direction = Direction::new(field, direction, &base)?;
        Ok(Component::Jet { base, direction })
    }

    /// `self` is a subscheme of `other` (same support point assumed).
    fn contained_in(&self, other: &Component) -> bool {
        if self.base() != other.base() {
            return false;
        }
        match (self, other) {
            (Component::Simple(_), _) => true,
            (Component::Jet { direction: a, .. }, Component::Jet { direction: b, .. }) => a == b,
            (Component::Jet { .. }, Component::Double(_)) => true,
            (Component::Double(_), Component::Double(_)) => true,
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroDimScheme {
    n: usize,
    components: Vec<Component>,
}

impl Serialize for ZeroDimScheme {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl ZeroDimScheme {
    pub fn new(n: usize, components: Vec<Component>) -> Result<Self, SchemeError> {
        let mut seen = HashSet::new();
        for c in &components {
            if c.base().ambient_dim() != n {
                return Err(SchemeError::AmbientMismatch {
                    expected: n,
                    got: c.base().ambient_dim(),
                });
            }
            if !seen.insert(c.base().clone()) {
                return Err(SchemeError::DuplicatePoint(c.base().coords().to_vec()));
            }
        }
        Ok(Self { n, components })
    }

    pub fn empty(n: usize) -> Self {
        Self { n, components: Vec::new() }
    }

    pub fn simple_points(n: usize, points: &[Point]) -> Result<Self, SchemeError> {
        Self::new(n, points.iter().cloned().map(Component::Simple).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn into_components(self) -> Vec<Component> {
        self.components
    }

    pub fn degree(&self) -> usize {
        self.components.iter().map(Component::degree).sum()
    }

    pub fn support(&self) -> Vec<Point> {
        self.components.iter().map(|c| c.base().clone()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn max_component_degree(&self) -> usize {
        self.components.iter().map(Component::degree).max().unwrap_or(0)
    }

    /// Componentwise containment.
    pub fn is_subscheme_of(&self, other: &ZeroDimScheme) -> bool {
        self.n == other.n
            && self
                .components
                .iter()
                .all(|c| other.components.iter().any(|o| o.base() == c.base() && c.contained_in(o)))
    }

    /// Subscheme keeping the components at the given indices.
    pub fn select(&self, idx: &[usize]) -> ZeroDimScheme {
        ZeroDimScheme {
            n: self.n,
            components: idx.iter().map(|&i| self.components[i].clone()).collect(),
        }
    }

    pub fn with_component(&self, i: usize, c: Option<Component>) -> ZeroDimScheme {
        let mut components = self.components.clone();
        match c {
            Some(c) => components[i] = c,
            None => {
                components.remove(i);
            }
        }
        ZeroDimScheme { n: self.n, components }
    }

    /// Subschemes of colength one, in component order: a simple point is
    /// dropped, a jet is cut down to its base point. Double points have no
    /// colength-one subscheme of this shape and are skipped.
    pub fn maximal_proper_subschemes(&self) -> Vec<(usize, ZeroDimScheme)> {
        self.components
            .iter()
            .enumerate()
            .filter_map(|(i, c)| match c {
                Component::Simple(_) => Some((i, self.with_component(i, None))),
                Component::Jet { base, .. } => Some((i, self.with_component(i, Some(Component::Simple(base.clone()))))),
                Component::Double(_) => None,
            })
            .collect()
    }

    /// The components lying in a linear subspace, rewritten in the
    /// subspace's own coordinates (a scheme of `P^m`, `m = dim M`).
    pub fn restrict_to(&self, field: PrimeField, m: &Subspace) -> ZeroDimScheme {
        let mut out = Vec::new();
        for c in &self.components {
            let Some(base) = m.point_in(field, c.base()) else {
                continue;
            };
            let rc = match c {
                Component::Simple(_) => Component::Simple(base),
                Component::Double(_) => Component::Double(base),
                Component::Jet { direction, .. } => match m.coords_of(field, direction.coords()) {
                    Some(v) => Component::jet(field, base.clone(), v).unwrap_or(Component::Simple(base)),
                    None => Component::Simple(base),
                },
            };
            out.push(rc);
        }
        ZeroDimScheme { n: m.dim(), components: out }
    }

    /// The scheme `Z ∩ M` kept in ambient coordinates. `None` when a double
    /// point meets a proper subspace of dimension at least 2, since that
    /// intersection is not one of the three component kinds (use
    /// `restrict_to` instead).
    pub fn intersect_subspace(&self, field: PrimeField, m: &Subspace) -> Option<ZeroDimScheme> {
        let mut out = Vec::new();
        for c in &self.components {
            if !m.contains_point(field, c.base()) {
                continue;
            }
            match c {
                Component::Simple(_) => out.push(c.clone()),
                Component::Jet { base, direction } => {
                    if m.contains(field, direction.coords()) {
                        out.push(c.clone());
                    } else {
                        out.push(Component::Simple(base.clone()));
                    }
                }
                Component::Double(p) => {
                    if m.dim() == self.n {
                        out.push(c.clone());
                    } else if m.dim() == 1 {
                        // 2p ∩ L is the jet along L
                        let other = m
                            .basis()
                            .iter()
                            .find_map(|b| Direction::new(field, b.clone(), p).ok())
                            .expect("a line has a direction off any of its points");
                        out.push(Component::Jet {
                            base: p.clone(),
                            direction: other,
                        });
                    } else {
                        return None;
                    }
                }
            }
        }
        Some(ZeroDimScheme { n: self.n, components: out })
    }

    pub fn to_json(&self) -> SchemeJson {
        SchemeJson {
            n: self.n,
            prime: None,
            components: self
                .components
                .iter()
                .map(|c| match c {
                    Component::Simple(p) => ComponentJson {
                        kind: ComponentKind::Simple,
                        point: p.coords().to_vec(),
                        direction: None,
                    },
                    Component::Double(p) => ComponentJson {
                        kind: ComponentKind::Double,
                        point: p.coords().to_vec(),
                        direction: None,
                    },
                    Component::Jet { base, direction } => ComponentJson {
                        kind: ComponentKind::Jet,
                        point: base.coords().to_vec(),
                        direction: Some(direction.coords().to_vec()),
                    },
                })
                .collect(),
        }
    }

    pub fn from_json(field: PrimeField, json: &SchemeJson) -> Result<Self, SchemeError> {
        let mut comps = Vec::with_capacity(json.components.len());
        for c in &json.components {
            if c.point.len() != json.n + 1 {
                return Err(SchemeError::AmbientMismatch {
                    expected: json.n,
                    got: c.point.len().saturating_sub(1),
                });
            }
            let base = Point::new(field, c.point.clone())?;
            comps.push(match c.kind {
                ComponentKind::Simple => Component::Simple(base),
                ComponentKind::Double => Component::Double(base),
                ComponentKind::Jet => {
                    let dir = c.direction.clone().ok_or_else(|| SchemeError::Json("jet without direction".into()))?;
                    Component::jet(field, base, dir)?
                }
            });
        }
        Self::new(json.n, comps)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Simple,
    Jet,
    Double,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub kind: ComponentKind,
    pub point: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<Vec<u64>>,
}

/// Wire format: `{"n":3,"components":[{"kind":"double","point":[...]}, ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    pub components: Vec<ComponentJson>,
}

/// `2S`: one double point per element of `points`.
pub fn double_scheme(points: &[Point]) -> Result<ZeroDimScheme, SchemeError> {
    let n = points.first().map(|p| p.ambient_dim()).unwrap_or(0);
    ZeroDimScheme::new(n, points.iter().cloned().map(Component::Double).collect())
}

/// `Res_f(Z)`, the scheme of the ideal quotient `(I_Z : f)`, componentwise.
pub fn residual(field: PrimeField, z: &ZeroDimScheme, f: &Hypersurface) -> Result<ZeroDimScheme, SchemeError> {
    if f.ambient_dim() != z.n {
        return Err(SchemeError::AmbientMismatch {
            expected: z.n,
            got: f.ambient_dim(),
        });
    }
    let mut out = Vec::with_capacity(z.components.len());
    for c in &z.components {
        let (value, grad) = evaluate_with_gradient(field, f, c.base())?;
        if value != 0 {
            out.push(c.clone());
            continue;
        }
        match c {
            Component::Simple(_) => {}
            Component::Jet { base, direction } => {
                if field.dot(&grad, direction.coords()) != 0 {
                    out.push(Component::Simple(base.clone()));
                }
            }
            Component::Double(p) => {
                if grad.iter().any(|&g| g != 0) {
                    out.push(Component::Simple(p.clone()));
                }
            }
        }
    }
    Ok(ZeroDimScheme { n: z.n, components: out })
}

/// `deg(Z ∩ L)` for the line through `a` and `b`.
pub fn intersection_degree_line(field: PrimeField, z: &ZeroDimScheme, a: &Point, b: &Point) -> Result<usize, SchemeError> {
    if a == b {
        return Err(SchemeError::DegenerateLine);
    }
    let line = Subspace::span_of_points(field, &[a.clone(), b.clone()])?;
    Ok(intersection_degree_subspace_line(field, z, &line))
}

pub(crate) fn intersection_degree_subspace_line(field: PrimeField, z: &ZeroDimScheme, line: &Subspace) -> usize {
    debug_assert_eq!(line.dim(), 1);
    z.components
        .iter()
        .map(|c| {
            if !line.contains_point(field, c.base()) {
                return 0;
            }
            match c {
                Component::Simple(_) => 1,
                Component::Double(_) => 2,
                Component::Jet { direction, .. } => {
                    if line.contains(field, direction.coords()) {
                        2
                    } else {
                        1
                    }
                }
            }
        })
        .sum()
}

/// `deg(Z ∩ V(f)) = deg Z - deg Res_f(Z)`.
pub fn intersection_degree_hypersurface(field: PrimeField, z: &ZeroDimScheme, f: &Hypersurface) -> Result<usize, SchemeError> {
    Ok(z.degree() - residual(field, z, f)?.degree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projgeom::random_point;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fld() -> PrimeField {
        PrimeField::default_field()
    }

    fn pts(n: usize, k: usize, seed: u64) -> Vec<Point> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..k).map(|_| random_point(fld(), n, &mut rng)).collect()
    }

    #[test]
    fn double_scheme_degrees() {
        assert_eq!(double_scheme(&pts(2, 5, 1)).unwrap().degree(), 15);
        assert_eq!(double_scheme(&pts(3, 12, 2)).unwrap().degree(), 48);
        assert_eq!(double_scheme(&pts(4, 1, 3)).unwrap().degree(), 5);
        let mut p = pts(2, 2, 4);
        p.push(p[0].clone());
        assert!(matches!(double_scheme(&p), Err(SchemeError::DuplicatePoint(_))));
    }

    #[test]
    fn residual_rules() {
        let f = fld();
        let p = Point::new(f, vec![1, 0, 0]).unwrap();
        // hyperplane x1 = 0 passes through p and is smooth there
        let h = Hypersurface::linear(f, vec![0, 1, 0]).unwrap();
        let z = double_scheme(std::slice::from_ref(&p)).unwrap();
        let r = residual(f, &z, &h).unwrap();
        assert_eq!(r.components(), &[Component::Simple(p.clone())]);

        // jet tangent to the hyperplane lies in it
        let jet = ZeroDimScheme::new(2, vec![Component::jet(f, p.clone(), vec![0, 0, 1]).unwrap()]).unwrap();
        assert!(residual(f, &jet, &h).unwrap().is_empty());
        // jet transverse to the hyperplane leaves its base point
        let jet2 = ZeroDimScheme::new(2, vec![Component::jet(f, p.clone(), vec![0, 1, 0]).unwrap()]).unwrap();
        assert_eq!(residual(f, &jet2, &h).unwrap().components(), &[Component::Simple(p.clone())]);

        // double plane 2H through p swallows the double point
        let sq = h.product(&h, f);
        assert!(residual(f, &z, &sq).unwrap().is_empty());
    }

    /// Quotient oracle on monomial ideals: for p = [1:0:0] in affine
    /// coordinates (y, z) = (x1/x0, x2/x0), I_{2p} = (y^2, yz, z^2) and
    /// f = y^2 lies in it, so (I : f) = (1).
    #[test]
    fn double_plane_quotient_oracle() {
        let f = fld();
        let ideal_gens: [[u32; 2]; 3] = [[2, 0], [1, 1], [0, 2]];
        let f_exp = [2u32, 0];
        let in_ideal = ideal_gens.iter().any(|g| g[0] <= f_exp[0] && g[1] <= f_exp[1]);
        assert!(in_ideal);
        let p = Point::new(f, vec![1, 0, 0]).unwrap();
        let y2 = Hypersurface::from_terms(f, 2, 2, &[(vec![0, 2, 0], 1)]).unwrap();
        let z = double_scheme(&[p]).unwrap();
        assert_eq!(residual(f, &z, &y2).unwrap().degree(), 0);
    }

    #[test]
    fn line_intersections() {
        let f = fld();
        let a = Point::new(f, vec![1, 0, 0]).unwrap();
        let b = Point::new(f, vec![0, 1, 0]).unwrap();
        let on_line: Vec<Point> = (1..=6).map(|t| Point::new(f, vec![1, t, 0]).unwrap()).collect();
        let z = ZeroDimScheme::simple_points(2, &on_line).unwrap();
        assert_eq!(intersection_degree_line(f, &z, &a, &b).unwrap(), 6);

        let dz = double_scheme(&[on_line[0].clone()]).unwrap();
        assert_eq!(intersection_degree_line(f, &dz, &a, &b).unwrap(), 2);

        let jz = ZeroDimScheme::new(2, vec![Component::jet(f, on_line[1].clone(), vec![0, 1, 0]).unwrap()]).unwrap();
        assert_eq!(intersection_degree_line(f, &jz, &a, &b).unwrap(), 2);
        let jz2 = ZeroDimScheme::new(2, vec![Component::jet(f, on_line[1].clone(), vec![0, 0, 1]).unwrap()]).unwrap();
        assert_eq!(intersection_degree_line(f, &jz2, &a, &b).unwrap(), 1);
        assert_eq!(intersection_degree_line(f, &z, &a, &a), Err(SchemeError::DegenerateLine));
    }

    #[test]
    fn hypersurface_intersections() {
        let f = fld();
        let p = Point::new(f, vec![1, 0, 0, 0]).unwrap();
        let h = Hypersurface::linear(f, vec![0, 1, 1, 0]).unwrap();
        let z = double_scheme(std::slice::from_ref(&p)).unwrap();
        assert_eq!(intersection_degree_hypersurface(f, &z, &h).unwrap(), 3);
        let far = Point::new(f, vec![0, 1, 0, 0]).unwrap();
        let jz = ZeroDimScheme::new(3, vec![Component::jet(f, far, vec![0, 0, 1, 0]).unwrap()]).unwrap();
        let h2 = Hypersurface::linear(f, vec![1, 0, 0, 0]).unwrap();
        // [0:1:0:0] lies on x0 = 0
        assert_eq!(intersection_degree_hypersurface(f, &jz, &h2).unwrap(), 2);
        assert_eq!(intersection_degree_hypersurface(f, &jz, &h).unwrap(), 0);
    }

    #[test]
    fn json_round_trip() {
        let f = fld();
        let ps = pts(3, 3, 7);
        let z = ZeroDimScheme::new(
            3,
            vec![
                Component::Double(ps[0].clone()),
                Component::jet(f, ps[1].clone(), vec![0, 1, 2, 3]).unwrap(),
                Component::Simple(ps[2].clone()),
            ],
        )
        .unwrap();
        let text = serde_json::to_string(&z.to_json()).unwrap();
        assert!(text.starts_with("{\"n\":3,\"components\":[{\"kind\":\"double\""));
        let back: SchemeJson = serde_json::from_str(&text).unwrap();
        assert_eq!(ZeroDimScheme::from_json(f, &back).unwrap(), z);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn random_scheme(seed: u64, n: usize, k: usize) -> ZeroDimScheme {
            let f = fld();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let comps = (0..k)
                .map(|i| {
                    let p = random_point(f, n, &mut rng);
                    match i % 3 {
                        0 => Component::Simple(p),
                        1 => Component::Double(p),
                        _ => {
                            let v = random_point(f, n, &mut rng).coords().to_vec();
                            Component::jet(f, p, v).unwrap()
                        }
                    }
                })
                .collect();
            ZeroDimScheme::new(n, comps).unwrap()
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn residual_degree_identity(seed in any::<u64>(), n in 2usize..4, k in 1usize..6, t in 1usize..3) {
                let f = fld();
                let z = random_scheme(seed, n, k);
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
                // force the hypersurface through the first support point
                let mut h = Hypersurface::random(f, n, t, &mut rng);
                let v = h.value(f, z.components()[0].base().coords());
                let lead = z.components()[0].base().lead_index();
                let mut e = vec![0u32; n + 1];
                e[lead] = t as u32;
                let shift = Hypersurface::from_terms(f, n, t, &[(e, f.neg(v))]).unwrap();
                let coeffs: Vec<u64> = h.coeffs().iter().zip(shift.coeffs()).map(|(&a, &b)| f.add(a, b)).collect();
                if let Ok(h2) = Hypersurface::new(f, n, t, coeffs) { h = h2; }
                let r = residual(f, &z, &h).unwrap();
                prop_assert_eq!(r.degree() + intersection_degree_hypersurface(f, &z, &h).unwrap(), z.degree());
                prop_assert!(r.is_subscheme_of(&z));

                // monotone: residual of a subscheme sits inside the residual
                let sub = z.select(&(0..z.components().len()).step_by(2).collect::<Vec<_>>());
                prop_assert!(residual(f, &sub, &h).unwrap().is_subscheme_of(&r));
            }

            #[test]
            fn residual_away_from_support(seed in any::<u64>(), n in 2usize..4, k in 1usize..6) {
                let f = fld();
                let z = random_scheme(seed, n, k);
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 1);
                let h = Hypersurface::random(f, n, 2, &mut rng);
                prop_assume!(z.support().iter().all(|p| !h.vanishes_at(f, p)));
                prop_assert_eq!(residual(f, &z, &h).unwrap(), z);
            }
        }
    }
}
