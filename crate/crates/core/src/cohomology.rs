//! Interpolation matrices and the numbers `h^0(I_Z(d))`, `h^1(I_Z(d))`.
//!
//! Rows of the condition matrix are linear conditions imposed by `Z` on
//! degree-`d` forms; columns are monomials in the fixed graded-lex order.
//! With `r` the rank, `h^0 = C(n+d, n) - r` and `h^1 = deg Z - r`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{LinalgError, Matrix, PrimeField};
use crate::projgeom::{monomial_count, MonomialBasis, Subspace};
use crate::schemes::{Component, SchemeError, ZeroDimScheme};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CohomologyError {
    #[error("twist must be at least 1, got {0}")]
    BadTwist(usize),
    #[error("prime {p} does not exceed the twist {d}")]
    PrimeTooSmall { p: u64, d: usize },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub n: usize,
    pub d: usize,
    pub scheme_degree: usize,
    pub rank: usize,
    pub h0: usize,
    pub h1: usize,
    pub primes: Vec<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub per_prime_ranks: Vec<(u64, usize)>,
    pub disagreement: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl CohomologyReport {
    fn from_rank(n: usize, d: usize, scheme_degree: usize, rank: usize, primes: Vec<u64>) -> Self {
        Self {
            n,
            d,
            scheme_degree,
            rank,
            h0: monomial_count(n, d) - rank,
            h1: scheme_degree - rank,
            primes,
            per_prime_ranks: Vec::new(),
            disagreement: false,
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// `h0 - h1 = C(n+d, n) - deg Z`.
    pub fn euler_characteristic_holds(&self) -> bool {
        self.h0 as i64 - self.h1 as i64 == monomial_count(self.n, self.d) as i64 - self.scheme_degree as i64
    }
}

fn check_twist(field: PrimeField, d: usize) -> Result<(), CohomologyError> {
    if d == 0 {
        return Err(CohomologyError::BadTwist(d));
    }
    if field.modulus() <= d as u64 {
        return Err(CohomologyError::PrimeTooSmall { p: field.modulus(), d });
    }
    Ok(())
}

/// Condition rows of `z` on degree-`d` forms.
///
/// Simple point: the evaluation row. Jet `(p, v)`: evaluation and `D_v`.
/// Double point: the `n + 1` partials (evaluation is `1/d` times their Euler
/// combination). One row per unit of degree.
pub fn condition_rows(field: PrimeField, z: &ZeroDimScheme, d: usize) -> Result<Matrix, CohomologyError> {
    check_twist(field, d)?;
    let basis = MonomialBasis::new(z.ambient_dim(), d);
    Ok(condition_rows_with(field, z, &basis))
}

pub(crate) fn condition_rows_with(field: PrimeField, z: &ZeroDimScheme, basis: &MonomialBasis) -> Matrix {
    let mut m = Matrix::zeros(field, 0, basis.len());
    for c in z.components() {
        match c {
            Component::Simple(p) => m.push_row(&basis.evaluation_row(field, p.coords())),
            Component::Jet { base, direction } => {
                m.push_row(&basis.evaluation_row(field, base.coords()));
                m.push_row(&basis.directional_row(field, base.coords(), direction.coords()));
            }
            Component::Double(p) => {
                for row in basis.partial_rows(field, p.coords()) {
                    m.push_row(&row);
                }
            }
        }
    }
    m
}

/// Cohomology of `I_Z(d)` over one prime field.
pub fn cohomology(field: PrimeField, z: &ZeroDimScheme, d: usize) -> Result<CohomologyReport, CohomologyError> {
    let m = condition_rows(field, z, d)?;
    Ok(CohomologyReport::from_rank(
        z.ambient_dim(),
        d,
        z.degree(),
        m.rank(),
        vec![field.modulus()],
    ))
}

/// Cohomology with the scheme rebuilt over each prime. The reported rank is
/// the maximum, and any disagreement is flagged rather than hidden.
pub fn cohomology_multi<F>(recipe: F, d: usize, primes: &[PrimeField]) -> Result<CohomologyReport, CohomologyError>
where
    F: Fn(&PrimeField) -> ZeroDimScheme,
{
    let mut first: Option<(usize, usize)> = None;
    let mut per_prime = Vec::with_capacity(primes.len());
    for f in primes {
        check_twist(*f, d)?;
        let z = recipe(f);
        let shape = (z.ambient_dim(), z.degree());
        if let Some(prev) = first {
            assert_eq!(prev, shape, "recipe must produce the same scheme shape for every prime");
        }
        first = Some(shape);
        let basis = MonomialBasis::new(z.ambient_dim(), d);
        per_prime.push((f.modulus(), condition_rows_with(*f, &z, &basis).rank()));
    }
    let Some((n, deg)) = first else {
        return Err(LinalgError::TooFewPrimes(0).into());
    };
    let rank = per_prime.iter().map(|&(_, r)| r).max().unwrap_or(0);
    let mut report = CohomologyReport::from_rank(n, d, deg, rank, primes.iter().map(|f| f.modulus()).collect());
    report.disagreement = per_prime.iter().any(|&(_, r)| r != rank);
    report.per_prime_ranks = per_prime;
    Ok(report)
}

pub fn h1(field: PrimeField, z: &ZeroDimScheme, d: usize) -> Result<usize, CohomologyError> {
    Ok(cohomology(field, z, d)?.h1)
}

pub fn h0(field: PrimeField, z: &ZeroDimScheme, d: usize) -> Result<usize, CohomologyError> {
    Ok(cohomology(field, z, d)?.h0)
}

/// Cohomology of `Z ∩ M` computed inside the subspace `M`.
pub fn cohomology_in_subspace(field: PrimeField, z: &ZeroDimScheme, m: &Subspace, d: usize) -> Result<CohomologyReport, CohomologyError> {
    cohomology(field, &z.restrict_to(field, m), d)
}
