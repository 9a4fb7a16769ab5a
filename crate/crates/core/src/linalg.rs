//! Prime-field arithmetic and dense elimination.
//!
//! Elements of `F_p` are stored as canonical residues in `0..p` inside `u64`.
//! For moduli below 2^31 (both default primes) a row update `a + f*b` stays
//! below 2^63, so elimination runs on plain `u64` arithmetic with one `%` per
//! entry. Larger moduli fall back to a `u128` widening multiply.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is below the 10^6 floor")]
    ModulusTooSmall(u64),
    #[error("modulus {0} does not fit in 63 bits")]
    ModulusTooLarge(u64),
    #[error("multi-prime rank needs at least two distinct primes, got {0}")]
    TooFewPrimes(usize),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("ranks disagree across primes: {0:?}")]
    Disagreement(Vec<(u64, usize)>),
}

/// The prime field `F_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct PrimeField {
    p: u64,
}

const MIN_MODULUS: u64 = 1_000_000;
const SMALL_MODULUS: u64 = 1 << 31;

impl PrimeField {
    pub const DEFAULT_PRIME: u64 = 2_147_483_647;
    pub const SECOND_PRIME: u64 = 2_147_483_629;

    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if p < MIN_MODULUS {
            return Err(LinalgError::ModulusTooSmall(p));
        }
        if p >= 1 << 63 {
            return Err(LinalgError::ModulusTooLarge(p));
        }
        if !primal_check::miller_rabin(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Self { p })
    }

    /// Skips the primality test. Used by tests that need a small field
    /// (for example `p = 101`) where the `p > 10^6` floor is irrelevant.
    pub fn new_unchecked(p: u64) -> Self {
        debug_assert!((2..1 << 63).contains(&p));
        Self { p }
    }

    pub fn default_field() -> Self {
        Self { p: Self::DEFAULT_PRIME }
    }

    pub fn second_field() -> Self {
        Self { p: Self::SECOND_PRIME }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u64 {
        v % self.p
    }

    pub fn from_i64(&self, v: i64) -> u64 {
        let r = v.rem_euclid(self.p as i64);
        r as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.p < SMALL_MODULUS {
            (a * b) % self.p
        } else {
            ((a as u128 * b as u128) % self.p as u128) as u64
        }
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn dot(&self, a: &[u64], b: &[u64]) -> u64 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    /// `dst += f * src`, entrywise.
    #[inline]
    fn axpy(&self, dst: &mut [u64], src: &[u64], f: u64) {
        if f == 0 {
            return;
        }
        let p = self.p;
        if p < SMALL_MODULUS {
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = (*d + f * s) % p;
            }
        } else {
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = ((*d as u128 + f as u128 * s as u128) % p as u128) as u64;
            }
        }
    }

    #[inline]
    fn scale(&self, row: &mut [u64], f: u64) {
        for v in row.iter_mut() {
            *v = self.mul(*v, f);
        }
    }

    /// A square root of `a`, if one exists (Tonelli-Shanks).
    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.p;
        let a = a % p;
        if a == 0 {
            return Some(0);
        }
        if self.pow(a, (p - 1) / 2) != 1 {
            return None;
        }
        if p % 4 == 3 {
            return Some(self.pow(a, (p + 1) / 4));
        }
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2;
        while self.pow(z, (p - 1) / 2) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(z, q);
        let mut t = self.pow(a, q);
        let mut r = self.pow(a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let b = self.pow(c, 1 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        Some(r)
    }
}

impl TryFrom<u64> for PrimeField {
    type Error = LinalgError;
    fn try_from(p: u64) -> Result<Self, Self::Error> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u64 {
    fn from(f: PrimeField) -> u64 {
        f.p
    }
}

/// Dense row-major matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row-major data, reducing every entry mod p.
    pub fn from_data(field: PrimeField, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Dimension {
                expected: rows * cols,
                got: data.len(),
            });
        }
        let data = data.into_iter().map(|v| field.reduce(v)).collect();
        Ok(Self { field, rows, cols, data })
    }

    pub fn from_rows(field: PrimeField, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r.iter().map(|&v| field.reduce(v)));
        }
        Self {
            field,
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u64) {
        self.data[r * self.cols + c] = self.field.reduce(v);
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn push_row(&mut self, row: &[u64]) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend(row.iter().map(|&v| self.field.reduce(v)));
        self.rows += 1;
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        Matrix {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn permute_rows(&self, perm: &[usize]) -> Matrix {
        assert_eq!(perm.len(), self.rows);
        self.select_rows(perm)
    }

    pub fn permute_cols(&self, perm: &[usize]) -> Matrix {
        assert_eq!(perm.len(), self.cols);
        let mut m = Matrix::zeros(self.field, self.rows, self.cols);
        for r in 0..self.rows {
            for (c, &src) in perm.iter().enumerate() {
                m.data[r * self.cols + c] = self.data[r * self.cols + src];
            }
        }
        m
    }

    pub fn block_diag(a: &Matrix, b: &Matrix) -> Matrix {
        assert_eq!(a.field, b.field);
        let mut m = Matrix::zeros(a.field, a.rows + b.rows, a.cols + b.cols);
        for r in 0..a.rows {
            for c in 0..a.cols {
                m.data[r * m.cols + c] = a.get(r, c);
            }
        }
        for r in 0..b.rows {
            for c in 0..b.cols {
                m.data[(a.rows + r) * m.cols + a.cols + c] = b.get(r, c);
            }
        }
        m
    }

    /// `v^T * self`.
    pub fn left_mul(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![0; self.cols];
        for (r, &coef) in v.iter().enumerate() {
            self.field.axpy(&mut out, self.row(r), coef);
        }
        out
    }

    /// `self * v`.
    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc = vec![0; other.cols];
            for k in 0..self.cols {
                self.field.axpy(&mut acc, other.row(k), self.get(r, k));
            }
            out.data[r * other.cols..(r + 1) * other.cols].copy_from_slice(&acc);
        }
        out
    }

    /// Rank by forward elimination, without kernel bookkeeping.
    pub fn rank(&self) -> usize {
        let mut a = self.data.clone();
        forward_eliminate(self.field, &mut a, self.rows, self.cols, None)
    }

    /// Basis of `{w : self * w = 0}`.
    pub fn right_kernel(&self) -> Vec<Vec<u64>> {
        self.transpose().rank_and_left_kernel().left_kernel_basis
    }

    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.data.clone();
        let mut t = Matrix::identity(self.field, n).data;
        let f = self.field;
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r * n + col] != 0)?;
            swap_rows(&mut a, n, piv, col);
            swap_rows(&mut t, n, piv, col);
            let inv = f.inv(a[col * n + col]);
            f.scale(&mut a[col * n..(col + 1) * n], inv);
            f.scale(&mut t[col * n..(col + 1) * n], inv);
            for r in 0..n {
                if r == col || a[r * n + col] == 0 {
                    continue;
                }
                let factor = f.neg(a[r * n + col]);
                let (src_a, dst_a) = pair_rows(&mut a, n, col, r);
                f.axpy(dst_a, src_a, factor);
                let (src_t, dst_t) = pair_rows(&mut t, n, col, r);
                f.axpy(dst_t, src_t, factor);
            }
        }
        Some(Matrix {
            field: self.field,
            rows: n,
            cols: n,
            data: t,
        })
    }

    pub fn rank_and_left_kernel(&self) -> RankProfile {
        rank_and_left_kernel(self)
    }
}

/// Rank together with a basis of the left kernel `{v : v^T M = 0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankProfile {
    pub rank: usize,
    pub left_kernel_basis: Vec<Vec<u64>>,
}

/// Gaussian elimination on `[M | I]`; zero rows of the reduced `M` carry the
/// left-kernel vectors in the identity block.
pub fn rank_and_left_kernel(m: &Matrix) -> RankProfile {
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.data.clone();
    let mut t = Matrix::identity(m.field, rows).data;
    let rank = forward_eliminate(m.field, &mut a, rows, cols, Some(&mut t));
    let left_kernel_basis = (rank..rows).map(|r| t[r * rows..(r + 1) * rows].to_vec()).collect();
    RankProfile { rank, left_kernel_basis }
}

fn swap_rows(a: &mut [u64], width: usize, i: usize, j: usize) {
    if i == j {
        return;
    }
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    let (head, tail) = a.split_at_mut(hi * width);
    head[lo * width..(lo + 1) * width].swap_with_slice(&mut tail[..width]);
}

/// Borrows row `src` immutably and row `dst` mutably.
fn pair_rows(a: &mut [u64], width: usize, src: usize, dst: usize) -> (&[u64], &mut [u64]) {
    assert_ne!(src, dst);
    if src < dst {
        let (head, tail) = a.split_at_mut(dst * width);
        (&head[src * width..(src + 1) * width], &mut tail[..width])
    } else {
        let (head, tail) = a.split_at_mut(src * width);
        (&tail[..width], &mut head[dst * width..(dst + 1) * width])
    }
}

/// Row echelon form in place; returns the rank. Pivot rows are normalized
/// to a leading 1. `track` (rows x rows) receives the same row operations.
fn forward_eliminate(f: PrimeField, a: &mut [u64], rows: usize, cols: usize, mut track: Option<&mut Vec<u64>>) -> usize {
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
            continue;
        };
        swap_rows(a, cols, piv, rank);
        if let Some(t) = track.as_deref_mut() {
            swap_rows(t, rows, piv, rank);
        }
        let inv = f.inv(a[rank * cols + col]);
        f.scale(&mut a[rank * cols + col..(rank + 1) * cols], inv);
        if let Some(t) = track.as_deref_mut() {
            f.scale(&mut t[rank * rows..(rank + 1) * rows], inv);
        }
        for r in rank + 1..rows {
            let lead = a[r * cols + col];
            if lead == 0 {
                continue;
            }
            let factor = f.neg(lead);
            let (src, dst) = pair_rows(a, cols, rank, r);
            f.axpy(&mut dst[col..], &src[col..], factor);
            if let Some(t) = track.as_deref_mut() {
                let (src, dst) = pair_rows(t, rows, rank, r);
                f.axpy(dst, src, factor);
            }
        }
        rank += 1;
    }
    rank
}

/// Ranks of one matrix recipe evaluated over several primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiPrimeRank {
    pub rank: usize,
    pub per_prime: Vec<(u64, usize)>,
    pub disagreement: bool,
}

impl MultiPrimeRank {
    pub fn into_result(self) -> Result<usize, LinalgError> {
        if self.disagreement {
            Err(LinalgError::Disagreement(self.per_prime))
        } else {
            Ok(self.rank)
        }
    }
}

/// Rebuilds the matrix once per prime and reports the maximum rank. A rank
/// can only drop at a bad prime, so the maximum is the best estimate of the
/// characteristic-zero rank; any disagreement is flagged.
pub fn multi_prime_rank<F>(recipe: F, primes: &[PrimeField]) -> Result<MultiPrimeRank, LinalgError>
where
    F: Fn(&PrimeField) -> Matrix,
{
    let mut distinct: Vec<u64> = primes.iter().map(|f| f.modulus()).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < 2 {
        return Err(LinalgError::TooFewPrimes(distinct.len()));
    }
    let per_prime: Vec<(u64, usize)> = primes.iter().map(|f| (f.modulus(), recipe(f).rank())).collect();
    let rank = per_prime.iter().map(|&(_, r)| r).max().unwrap_or(0);
    let disagreement = per_prime.iter().any(|&(_, r)| r != rank);
    Ok(MultiPrimeRank {
        rank,
        per_prime,
        disagreement,
    })
}
