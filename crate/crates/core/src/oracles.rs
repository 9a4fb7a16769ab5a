//! Slow reference computations kept independent of the main path.
//!
//! Nothing here calls the monomial basis, the condition-row builder or the
//! elimination routine of the main path. Monomials are listed in reverse
//! lexicographic order, the matrix is built column by column, and
//! elimination pivots on the last nonzero entry of each column.

use serde::Serialize;

use crate::constructions::{CurveKind, CurveSpec};
use crate::schemes::{Component, ZeroDimScheme};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    pub quantity: String,
    pub oracle: i64,
    pub main: i64,
    pub agree: bool,
}

impl OracleResult {
    pub fn compare(quantity: impl Into<String>, oracle: i64, main: i64) -> Self {
        Self {
            quantity: quantity.into(),
            oracle,
            main,
            agree: oracle == main,
        }
    }
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    r
}

/// Exponent vectors of degree `d` in `n + 1` variables, reverse lex.
fn monomials(n: usize, d: usize) -> Vec<Vec<u64>> {
    fn rec(i: usize, left: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur[i] = k;
            rec(i + 1, left - k, cur, out);
        }
    }
    let mut out = Vec::new();
    let mut cur = vec![0u64; n + 1];
    rec(0, d as u64, &mut cur, &mut out);
    out
}

fn monomial_value(e: &[u64], x: &[u64], p: u64) -> u64 {
    e.iter().zip(x).fold(1 % p, |acc, (&k, &xi)| mulmod(acc, powmod(xi, k, p), p))
}

/// `∂_i x^e` at `x`.
fn partial_value(e: &[u64], i: usize, x: &[u64], p: u64) -> u64 {
    if e[i] == 0 {
        return 0;
    }
    let mut f = e.to_vec();
    f[i] -= 1;
    mulmod(e[i] % p, monomial_value(&f, x, p), p)
}

/// Entries of one monomial's column, one per condition of `z`.
fn column(z: &ZeroDimScheme, e: &[u64], p: u64) -> Vec<u64> {
    let mut col = Vec::new();
    for c in z.components() {
        let x = c.base().coords();
        match c {
            Component::Simple(_) => col.push(monomial_value(e, x, p)),
            Component::Jet { direction, .. } => {
                col.push(monomial_value(e, x, p));
                let v = direction.coords();
                let s = (0..x.len()).fold(0u64, |acc, i| (acc + mulmod(v[i], partial_value(e, i, x, p), p)) % p);
                col.push(s);
            }
            Component::Double(_) => {
                for i in 0..x.len() {
                    col.push(partial_value(e, i, x, p));
                }
            }
        }
    }
    col
}

/// Rank by column elimination, pivoting on the last nonzero row.
fn rank_by_columns(mut cols: Vec<Vec<u64>>, rows: usize, p: u64) -> usize {
    let mut rank = 0;
    let mut used = vec![false; rows];
    for j in 0..cols.len() {
        let Some(r) = (0..rows).rev().find(|&r| !used[r] && cols[j][r] != 0) else {
            continue;
        };
        used[r] = true;
        rank += 1;
        let inv = powmod(cols[j][r], p - 2, p);
        for k in j + 1..cols.len() {
            let f = mulmod(cols[k][r], inv, p);
            if f == 0 {
                continue;
            }
            let (head, tail) = cols.split_at_mut(k);
            for (dst, &src) in tail[0].iter_mut().zip(&head[j]) {
                *dst = (*dst + p - mulmod(f, src, p)) % p;
            }
        }
    }
    rank
}

/// `(h0, h1)` of `I_Z(d)` over `F_p`.
pub fn h_oracle(p: u64, z: &ZeroDimScheme, d: usize) -> (usize, usize) {
    let mons = monomials(z.ambient_dim(), d);
    let deg = z.degree();
    let cols: Vec<Vec<u64>> = mons.iter().map(|e| column(z, e, p)).collect();
    let rank = rank_by_columns(cols, deg, p);
    (mons.len() - rank, deg - rank)
}

/// `h1` of a line bundle of degree `e` on the curve, from `h0` and
/// Riemann–Roch `h0 - h1 = e + 1 - g`. On an elliptic curve a degree-0
/// class has sections only when trivial.
pub fn line_bundle_h1(genus: usize, e: i64, trivial: bool) -> usize {
    let h0: i64 = match (genus, e) {
        (0, e) if e >= 0 => e + 1,
        (0, _) => 0,
        (1, 0) => i64::from(trivial),
        (1, e) if e > 0 => e,
        (1, _) => 0,
        _ => unreachable!("rational and elliptic curves only"),
    };
    (h0 - (e + 1 - genus as i64)) as usize
}

/// `h1(I_{2S∩C,C}(d))` for `x` points on the curve of `spec`, where the
/// divisor `2S ∩ C` has degree `2x`. `None` for reducible curves.
pub fn curve_h1_oracle(spec: &CurveSpec, divisor_degree: usize, d: usize) -> Option<usize> {
    if matches!(spec.kind, CurveKind::ReducibleRnc { .. }) {
        return None;
    }
    let e = (spec.degree * d) as i64 - divisor_degree as i64;
    Some(line_bundle_h1(spec.kind.genus(), e, spec.linked))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;
    use crate::projgeom::{monomial_count, random_point, Point};
    use crate::schemes::double_scheme;
    use crate::seed;

    #[test]
    fn monomial_listing_has_binomial_size() {
        for n in 1..4 {
            for d in 0..6 {
                assert_eq!(monomials(n, d).len(), monomial_count(n, d));
            }
        }
    }

    #[test]
    fn empty_scheme_has_all_sections() {
        let p = PrimeField::default_field().modulus();
        assert_eq!(h_oracle(p, &ZeroDimScheme::empty(3), 4), (35, 0));
    }

    #[test]
    fn five_general_plane_points_quartics() {
        let f = PrimeField::default_field();
        let mut rng = seed::rng(1);
        let pts: Vec<Point> = (0..5).map(|_| random_point(f, 2, &mut rng)).collect();
        assert_eq!(h_oracle(f.modulus(), &double_scheme(&pts).unwrap(), 4), (1, 1));
    }

    #[test]
    fn line_bundle_table() {
        assert_eq!(line_bundle_h1(0, -3, false), 2);
        assert_eq!(line_bundle_h1(0, -1, false), 0);
        assert_eq!(line_bundle_h1(0, 4, false), 0);
        assert_eq!(line_bundle_h1(1, 0, true), 1);
        assert_eq!(line_bundle_h1(1, 0, false), 0);
        assert_eq!(line_bundle_h1(1, 3, false), 0);
        assert_eq!(line_bundle_h1(1, -2, false), 2);
    }
}
