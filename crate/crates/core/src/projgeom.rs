//! Points, linear subspaces, and forms on `P^n` over a prime field.

use std::collections::HashMap;

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{Matrix, PrimeField};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("empty input")]
    EmptyInput,
    #[error("zero vector is not a projective point")]
    ZeroVector,
    #[error("direction is proportional to its base point")]
    EulerDirection,
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
}

fn normalize(field: PrimeField, coords: &mut [u64]) -> Result<(), GeomError> {
    let Some(lead) = coords.iter().copied().find(|&c| c != 0) else {
        return Err(GeomError::ZeroVector);
    };
    let inv = field.inv(lead);
    for c in coords.iter_mut() {
        *c = field.mul(*c, inv);
    }
    Ok(())
}

/// A point of `P^n`, scaled so its first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Point {
    coords: Vec<u64>,
}

impl Point {
    pub fn new(field: PrimeField, coords: Vec<u64>) -> Result<Self, GeomError> {
        let mut coords: Vec<u64> = coords.into_iter().map(|c| field.reduce(c)).collect();
        normalize(field, &mut coords)?;
        Ok(Self { coords })
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    /// Ambient dimension `n` (the point has `n + 1` coordinates).
    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Index of the leading coordinate, which equals 1.
    pub fn lead_index(&self) -> usize {
        self.coords.iter().position(|&c| c != 0).expect("normalized point")
    }

    pub fn coordinate_point(field: PrimeField, n: usize, i: usize) -> Self {
        let mut c = vec![0; n + 1];
        c[i] = 1;
        Self::new(field, c).expect("unit vector")
    }
}

/// Tangent direction at a base point, taken modulo scalars and modulo the
/// base point itself: the coordinate at the base's lead index is zeroed, then
/// the vector is scaled like a `Point`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Direction {
    coords: Vec<u64>,
}

impl Direction {
    pub fn new(field: PrimeField, coords: Vec<u64>, base: &Point) -> Result<Self, GeomError> {
        if coords.len() != base.coords.len() {
            return Err(GeomError::DimensionMismatch {
                expected: base.coords.len(),
                got: coords.len(),
            });
        }
        let k = base.lead_index();
        let mut v: Vec<u64> = coords.into_iter().map(|c| field.reduce(c)).collect();
        let shift = v[k];
        for (vi, &bi) in v.iter_mut().zip(&base.coords) {
            *vi = field.sub(*vi, field.mul(shift, bi));
        }
        normalize(field, &mut v).map_err(|_| GeomError::EulerDirection)?;
        Ok(Self { coords: v })
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

/// `C(n + d, n)`, the number of degree-`d` monomials in `n + 1` variables.
pub fn monomial_count(n: usize, d: usize) -> usize {
    let mut acc: u128 = 1;
    for i in 1..=n as u128 {
        acc = acc * (d as u128 + i) / i;
    }
    acc as usize
}

/// Degree-`d` monomials in `x_0..x_n`, in lexicographic order with
/// `x_0^d` first (graded-lex, since all have the same degree).
#[derive(Debug, Clone)]
pub struct MonomialBasis {
    n: usize,
    d: usize,
    exponents: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl MonomialBasis {
    pub fn new(n: usize, d: usize) -> Self {
        let mut exponents = Vec::with_capacity(monomial_count(n, d));
        let mut cur = vec![0u32; n + 1];
        fill_exponents(&mut exponents, &mut cur, 0, d as u32);
        let index = exponents.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        Self { n, d, exponents, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    pub fn index_of(&self, exps: &[u32]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    /// `powers[i][k] = x_i^k` for `k <= d`.
    fn power_table(&self, field: PrimeField, pt: &[u64]) -> Vec<Vec<u64>> {
        pt.iter()
            .map(|&c| {
                let mut row = Vec::with_capacity(self.d + 1);
                let mut acc = 1;
                for _ in 0..=self.d {
                    row.push(acc);
                    acc = field.mul(acc, c);
                }
                row
            })
            .collect()
    }

    /// Values of every monomial at `pt`.
    pub fn evaluation_row(&self, field: PrimeField, pt: &[u64]) -> Vec<u64> {
        let pw = self.power_table(field, pt);
        self.exponents
            .iter()
            .map(|e| e.iter().enumerate().fold(1, |acc, (i, &k)| field.mul(acc, pw[i][k as usize])))
            .collect()
    }

    /// Rows `[d/dx_0, ..., d/dx_n]` of every monomial at `pt`.
    pub fn partial_rows(&self, field: PrimeField, pt: &[u64]) -> Vec<Vec<u64>> {
        let pw = self.power_table(field, pt);
        let mut rows = vec![vec![0u64; self.len()]; self.n + 1];
        for (col, e) in self.exponents.iter().enumerate() {
            for j in 0..=self.n {
                if e[j] == 0 {
                    continue;
                }
                let mut v = field.reduce(e[j] as u64);
                for (i, &k) in e.iter().enumerate() {
                    let k = if i == j { k - 1 } else { k };
                    v = field.mul(v, pw[i][k as usize]);
                }
                rows[j][col] = v;
            }
        }
        rows
    }

    /// Row of the directional derivative `D_v` at `pt`.
    pub fn directional_row(&self, field: PrimeField, pt: &[u64], v: &[u64]) -> Vec<u64> {
        let partials = self.partial_rows(field, pt);
        let mut row = vec![0u64; self.len()];
        for (prow, &vi) in partials.iter().zip(v) {
            if vi == 0 {
                continue;
            }
            for (r, &x) in row.iter_mut().zip(prow) {
                *r = field.add(*r, field.mul(vi, x));
            }
        }
        row
    }
}

fn fill_exponents(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, pos: usize, left: u32) {
    if pos + 1 == cur.len() {
        cur[pos] = left;
        out.push(cur.clone());
        return;
    }
    for k in (0..=left).rev() {
        cur[pos] = k;
        fill_exponents(out, cur, pos + 1, left - k);
    }
    cur[pos] = 0;
}

/// A nonzero form of degree `t` in `x_0..x_n`, coefficients indexed by
/// `MonomialBasis::new(n, t)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Hypersurface {
    n: usize,
    degree: usize,
    coeffs: Vec<u64>,
}

impl Hypersurface {
    pub fn new(field: PrimeField, n: usize, degree: usize, coeffs: Vec<u64>) -> Result<Self, GeomError> {
        let expected = monomial_count(n, degree);
        if coeffs.len() != expected {
            return Err(GeomError::DimensionMismatch { expected, got: coeffs.len() });
        }
        let coeffs: Vec<u64> = coeffs.into_iter().map(|c| field.reduce(c)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            return Err(GeomError::ZeroVector);
        }
        Ok(Self { n, degree, coeffs })
    }

    pub fn linear(field: PrimeField, coeffs: Vec<u64>) -> Result<Self, GeomError> {
        if coeffs.is_empty() {
            return Err(GeomError::EmptyInput);
        }
        let n = coeffs.len() - 1;
        Self::new(field, n, 1, coeffs)
    }

    pub fn from_terms(field: PrimeField, n: usize, degree: usize, terms: &[(Vec<u32>, u64)]) -> Result<Self, GeomError> {
        let basis = MonomialBasis::new(n, degree);
        let mut coeffs = vec![0u64; basis.len()];
        for (e, c) in terms {
            let i = basis.index_of(e).ok_or(GeomError::DimensionMismatch {
                expected: n + 1,
                got: e.len(),
            })?;
            coeffs[i] = field.add(coeffs[i], field.reduce(*c));
        }
        Self::new(field, n, degree, coeffs)
    }

    pub fn random(field: PrimeField, n: usize, degree: usize, rng: &mut impl Rng) -> Self {
        loop {
            let coeffs = (0..monomial_count(n, degree)).map(|_| rng.gen_range(0..field.modulus())).collect();
            if let Ok(h) = Self::new(field, n, degree, coeffs) {
                return h;
            }
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn terms(&self) -> Vec<(Vec<u32>, u64)> {
        let basis = MonomialBasis::new(self.n, self.degree);
        basis
            .exponents()
            .iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| (e.clone(), c))
            .collect()
    }

    pub fn product(&self, other: &Hypersurface, field: PrimeField) -> Hypersurface {
        assert_eq!(self.n, other.n);
        let basis = MonomialBasis::new(self.n, self.degree + other.degree);
        let mut coeffs = vec![0u64; basis.len()];
        for (ea, ca) in self.terms() {
            for (eb, cb) in other.terms() {
                let e: Vec<u32> = ea.iter().zip(&eb).map(|(a, b)| a + b).collect();
                let i = basis.index_of(&e).expect("degree adds");
                coeffs[i] = field.add(coeffs[i], field.mul(ca, cb));
            }
        }
        Hypersurface {
            n: self.n,
            degree: self.degree + other.degree,
            coeffs,
        }
    }

    /// `h(M^{-1} x)`: the image of the hypersurface under the transform `M`.
    pub fn transformed(&self, field: PrimeField, t: &ProjectiveTransform) -> Hypersurface {
        let inv = t.inverse();
        // x_i -> sum_j inv[i][j] x_j
        let linear: Vec<Hypersurface> = (0..=self.n)
            .map(|i| Hypersurface {
                n: self.n,
                degree: 1,
                coeffs: inv.matrix.row(i).to_vec(),
            })
            .collect();
        let basis = MonomialBasis::new(self.n, self.degree);
        let mut acc = vec![0u64; basis.len()];
        for (e, c) in self.terms() {
            let mut term = Hypersurface {
                n: self.n,
                degree: 0,
                coeffs: vec![c],
            };
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    term = term.product(&linear[i], field);
                }
            }
            for (a, &b) in acc.iter_mut().zip(&term.coeffs) {
                *a = field.add(*a, b);
            }
        }
        Hypersurface {
            n: self.n,
            degree: self.degree,
            coeffs: acc,
        }
    }

    pub fn value(&self, field: PrimeField, pt: &[u64]) -> u64 {
        let basis = MonomialBasis::new(self.n, self.degree);
        field.dot(&basis.evaluation_row(field, pt), &self.coeffs)
    }

    pub fn vanishes_at(&self, field: PrimeField, pt: &Point) -> bool {
        self.value(field, pt.coords()) == 0
    }
}

/// Exact value and gradient of `h` at `pt`.
pub fn evaluate_with_gradient(field: PrimeField, h: &Hypersurface, pt: &Point) -> Result<(u64, Vec<u64>), GeomError> {
    if pt.ambient_dim() != h.n {
        return Err(GeomError::DimensionMismatch {
            expected: h.n + 1,
            got: pt.coords().len(),
        });
    }
    let basis = MonomialBasis::new(h.n, h.degree);
    let value = field.dot(&basis.evaluation_row(field, pt.coords()), &h.coeffs);
    let grad = basis
        .partial_rows(field, pt.coords())
        .iter()
        .map(|row| field.dot(row, &h.coeffs))
        .collect();
    Ok((value, grad))
}

/// Projective dimension of the span of `points`.
pub fn span_dim(field: PrimeField, points: &[Point]) -> Result<usize, GeomError> {
    if points.is_empty() {
        return Err(GeomError::EmptyInput);
    }
    let cols = points[0].coords().len();
    let rows: Vec<Vec<u64>> = points.iter().map(|p| p.coords().to_vec()).collect();
    Ok(Matrix::from_rows(field, cols, &rows).rank() - 1)
}

/// A linear subspace of `P^n`, stored as a reduced row echelon basis.
///
/// Coordinates relative to that basis identify the subspace with `P^m`;
/// this is the change of coordinates used for every in-plane computation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn spanned_by(field: PrimeField, vectors: &[Vec<u64>]) -> Result<Self, GeomError> {
        if vectors.is_empty() {
            return Err(GeomError::EmptyInput);
        }
        let cols = vectors[0].len();
        let mut rows: Vec<Vec<u64>> = vectors.iter().map(|v| v.iter().map(|&c| field.reduce(c)).collect()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(r, piv);
            let inv = field.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = field.mul(*x, inv);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    let (src, dst) = if i < r {
                        let (a, b) = rows.split_at_mut(r);
                        (&b[0], &mut a[i])
                    } else {
                        let (a, b) = rows.split_at_mut(i);
                        (&a[r], &mut b[0])
                    };
                    for (d, &s) in dst.iter_mut().zip(src.iter()) {
                        *d = field.sub(*d, field.mul(f, s));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if r == 0 {
            return Err(GeomError::ZeroVector);
        }
        rows.truncate(r);
        Ok(Self {
            ambient: cols - 1,
            basis: rows,
            pivots,
        })
    }

    pub fn span_of_points(field: PrimeField, points: &[Point]) -> Result<Self, GeomError> {
        let v: Vec<Vec<u64>> = points.iter().map(|p| p.coords().to_vec()).collect();
        Self::spanned_by(field, &v)
    }

    /// The whole space `P^n`.
    pub fn full(field: PrimeField, n: usize) -> Self {
        let v: Vec<Vec<u64>> = (0..=n).map(|i| Point::coordinate_point(field, n, i).coords().to_vec()).collect();
        Self::spanned_by(field, &v).expect("coordinate basis")
    }

    /// Zero locus of a linear form.
    pub fn hyperplane(field: PrimeField, form: &[u64]) -> Result<Self, GeomError> {
        let m = Matrix::from_rows(field, form.len(), &[form.to_vec()]);
        let ker = m.right_kernel();
        Self::spanned_by(field, &ker)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    /// Projective dimension.
    pub fn dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.basis
    }

    /// Coordinates `c` with `v = sum c_j basis_j`, or `None` if `v` is not
    /// in the subspace.
    pub fn coords_of(&self, field: PrimeField, v: &[u64]) -> Option<Vec<u64>> {
        let c: Vec<u64> = self.pivots.iter().map(|&p| field.reduce(v[p])).collect();
        let back = self.lift(field, &c);
        if back.iter().zip(v).all(|(&a, &b)| a == field.reduce(b)) {
            Some(c)
        } else {
            None
        }
    }

    pub fn contains(&self, field: PrimeField, v: &[u64]) -> bool {
        self.coords_of(field, v).is_some()
    }

    pub fn contains_point(&self, field: PrimeField, p: &Point) -> bool {
        self.contains(field, p.coords())
    }

    pub fn lift(&self, field: PrimeField, c: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.ambient + 1];
        for (row, &cj) in self.basis.iter().zip(c) {
            for (o, &x) in out.iter_mut().zip(row) {
                *o = field.add(*o, field.mul(cj, x));
            }
        }
        out
    }

    pub fn point_in(&self, field: PrimeField, p: &Point) -> Option<Point> {
        self.coords_of(field, p.coords()).and_then(|c| Point::new(field, c).ok())
    }

    pub fn lift_point(&self, field: PrimeField, c: &[u64]) -> Point {
        Point::new(field, self.lift(field, c)).expect("nonzero coordinates lift to a nonzero vector")
    }

    /// Linear forms cutting out the subspace (a basis of its annihilator).
    pub fn equations(&self, field: PrimeField) -> Vec<Vec<u64>> {
        Matrix::from_rows(field, self.ambient + 1, &self.basis).right_kernel()
    }

    pub fn random_point(&self, field: PrimeField, rng: &mut impl Rng) -> Point {
        loop {
            let c: Vec<u64> = (0..self.basis.len()).map(|_| rng.gen_range(0..field.modulus())).collect();
            if c.iter().any(|&x| x != 0) {
                return self.lift_point(field, &c);
            }
        }
    }

    pub fn intersect(&self, field: PrimeField, other: &Subspace) -> Option<Subspace> {
        let mut eqs = self.equations(field);
        eqs.extend(other.equations(field));
        if eqs.is_empty() {
            return Some(self.clone());
        }
        let ker = Matrix::from_rows(field, self.ambient + 1, &eqs).right_kernel();
        if ker.is_empty() {
            None
        } else {
            Subspace::spanned_by(field, &ker).ok()
        }
    }
}

/// An invertible linear change of coordinates of `P^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectiveTransform {
    matrix: Matrix,
}

impl ProjectiveTransform {
    pub fn new(matrix: Matrix) -> Result<Self, GeomError> {
        if matrix.rows() != matrix.cols() || matrix.rank() != matrix.rows() {
            return Err(GeomError::Degenerate("transform must be invertible"));
        }
        Ok(Self { matrix })
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        Self {
            matrix: Matrix::identity(field, n + 1),
        }
    }

    pub fn random(field: PrimeField, n: usize, rng: &mut impl Rng) -> Self {
        loop {
            let data = (0..(n + 1) * (n + 1)).map(|_| rng.gen_range(0..field.modulus())).collect();
            let m = Matrix::from_data(field, n + 1, n + 1, data).expect("square");
            if let Ok(t) = Self::new(m) {
                return t;
            }
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse(&self) -> ProjectiveTransform {
        Self {
            matrix: self.matrix.inverse().expect("invertible by construction"),
        }
    }

    pub fn apply_vec(&self, v: &[u64]) -> Vec<u64> {
        self.matrix.mul_vec(v)
    }

    pub fn apply(&self, field: PrimeField, p: &Point) -> Point {
        Point::new(field, self.apply_vec(p.coords())).expect("invertible map keeps points nonzero")
    }
}

pub fn random_point(field: PrimeField, n: usize, rng: &mut impl Rng) -> Point {
    loop {
        let c: Vec<u64> = (0..=n).map(|_| rng.gen_range(0..field.modulus())).collect();
        if let Ok(p) = Point::new(field, c) {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f() -> PrimeField {
        PrimeField::default_field()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomial_count(2, 4), 15);
        assert_eq!(monomial_count(3, 5), 56);
        assert_eq!(monomial_count(3, 17), 1140);
        assert_eq!(monomial_count(4, 0), 1);
        let b = MonomialBasis::new(2, 2);
        assert_eq!(
            b.exponents(),
            &[vec![2, 0, 0], vec![1, 1, 0], vec![1, 0, 1], vec![0, 2, 0], vec![0, 1, 1], vec![0, 0, 2]]
        );
    }

    #[test]
    fn pascal_rule() {
        for n in 1..6 {
            for d in 1..10 {
                assert_eq!(monomial_count(n, d), monomial_count(n - 1, d) + monomial_count(n, d - 1));
                assert_eq!(MonomialBasis::new(n, d).len(), monomial_count(n, d));
            }
        }
    }

    #[test]
    fn span_examples() {
        let fld = f();
        let a = Point::new(fld, vec![1, 0, 0, 0]).unwrap();
        let b = Point::new(fld, vec![0, 1, 0, 0]).unwrap();
        let c = Point::new(fld, vec![1, 5, 0, 0]).unwrap();
        assert_eq!(span_dim(fld, &[a, b, c]).unwrap(), 1);
        let coords: Vec<Point> = (0..4).map(|i| Point::coordinate_point(fld, 3, i)).collect();
        assert_eq!(span_dim(fld, &coords).unwrap(), 3);
        assert_eq!(span_dim(fld, &[]), Err(GeomError::EmptyInput));
    }

    #[test]
    fn gradient_examples() {
        let fld = f();
        let sq = Hypersurface::from_terms(fld, 2, 2, &[(vec![2, 0, 0], 1)]).unwrap();
        let pt = Point::new(fld, vec![0, 1, 0]).unwrap();
        assert_eq!(evaluate_with_gradient(fld, &sq, &pt).unwrap(), (0, vec![0, 0, 0]));
        let xy = Hypersurface::from_terms(fld, 2, 2, &[(vec![1, 1, 0], 1)]).unwrap();
        let pt = Point::new(fld, vec![1, 1, 0]).unwrap();
        assert_eq!(evaluate_with_gradient(fld, &xy, &pt).unwrap(), (1, vec![1, 1, 0]));
    }

    #[test]
    fn euler_identity() {
        let fld = f();
        let mut rng = ChaCha8Rng::seed_from_u64(50);
        for i in 0..50 {
            let n = 2 + i % 3;
            let t = 1 + i % 6;
            let h = Hypersurface::random(fld, n, t, &mut rng);
            let pt = random_point(fld, n, &mut rng);
            let (v, g) = evaluate_with_gradient(fld, &h, &pt).unwrap();
            assert_eq!(fld.dot(pt.coords(), &g), fld.mul(t as u64, v));
        }
    }

    #[test]
    fn direction_mod_euler() {
        let fld = f();
        let p = Point::new(fld, vec![1, 2, 3]).unwrap();
        let d1 = Direction::new(fld, vec![0, 1, 0], &p).unwrap();
        let d2 = Direction::new(fld, vec![5, 11, 15], &p).unwrap(); // 5p + (0,1,0)
        assert_eq!(d1, d2);
        assert_eq!(Direction::new(fld, vec![2, 4, 6], &p), Err(GeomError::EulerDirection));
    }

    #[test]
    fn span_invariant_under_transform() {
        let fld = f();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let line = Subspace::span_of_points(fld, &[random_point(fld, 3, &mut rng), random_point(fld, 3, &mut rng)]).unwrap();
        let mut pts: Vec<Point> = (0..4).map(|_| line.random_point(fld, &mut rng)).collect();
        pts.push(random_point(fld, 3, &mut rng));
        let g = ProjectiveTransform::random(fld, 3, &mut rng);
        let moved: Vec<Point> = pts.iter().map(|p| g.apply(fld, p)).collect();
        assert_eq!(span_dim(fld, &pts).unwrap(), 2);
        assert_eq!(span_dim(fld, &moved).unwrap(), 2);
    }

    #[test]
    fn transformed_hypersurface_vanishes_on_image() {
        let fld = f();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let h = Hypersurface::random(fld, 3, 2, &mut rng);
        let g = ProjectiveTransform::random(fld, 3, &mut rng);
        let hg = h.transformed(fld, &g);
        for _ in 0..10 {
            let p = random_point(fld, 3, &mut rng);
            let v = h.value(fld, p.coords());
            let w = hg.value(fld, &g.apply_vec(p.coords()));
            assert_eq!(v, w);
        }
    }

    #[test]
    fn subspace_coordinates() {
        let fld = f();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let a = random_point(fld, 3, &mut rng);
        let b = random_point(fld, 3, &mut rng);
        let c = random_point(fld, 3, &mut rng);
        let plane = Subspace::span_of_points(fld, &[a.clone(), b, c]).unwrap();
        assert_eq!(plane.dim(), 2);
        let ca = plane.coords_of(fld, a.coords()).unwrap();
        assert_eq!(plane.lift_point(fld, &ca), a);
        let off = random_point(fld, 3, &mut rng);
        assert!(!plane.contains_point(fld, &off));
        let eqs = plane.equations(fld);
        assert_eq!(eqs.len(), 1);
        assert_eq!(fld.dot(&eqs[0], a.coords()), 0);
        let h = Subspace::hyperplane(fld, &eqs[0]).unwrap();
        assert_eq!(h, plane);
    }

    proptest::proptest! {
        #[test]
        fn pascal_prop(n in 1usize..8, d in 1usize..20) {
            proptest::prop_assert_eq!(monomial_count(n, d), monomial_count(n - 1, d) + monomial_count(n, d - 1));
        }
    }
}
