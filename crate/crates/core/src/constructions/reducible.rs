//! Points on reducible rational normal curves shaped as a chain.
//!
//! Segment `i` of degree `n_i` is the rational normal curve
//! `t ↦ Σ_j t^j e_{a_i + j}` in the span of `e_{a_i}, …, e_{a_i + n_i}`,
//! where `a_1 = 0` and `a_{i+1} = a_i + n_i`. Consecutive segments meet only
//! at the coordinate point `e_{a_{i+1}}` (parameter `∞` on segment `i`,
//! `0` on segment `i + 1`), so nonzero finite parameters stay on the smooth
//! locus.

use rand::Rng;

use super::{distinct_nonzero, transform_rows, ConstructionError, CurveKind, CurveSpec, Sample};
use crate::linalg::PrimeField;
use crate::projgeom::{Point, ProjectiveTransform};
use crate::seed;

/// Sample `allocation[i]` smooth points on segment `i`, plus the nodes
/// listed in `nodes` (node `j` joins segments `j` and `j + 1`).
pub fn reducible_rnc_points(
    field: PrimeField,
    chain: &[usize],
    allocation: &[usize],
    nodes: &[usize],
    seed: u64,
) -> Result<Sample, ConstructionError> {
    reducible_rnc_points_with(field, chain, allocation, nodes, &mut seed::rng(seed))
}

pub(crate) fn reducible_rnc_points_with(
    field: PrimeField,
    chain: &[usize],
    allocation: &[usize],
    nodes: &[usize],
    rng: &mut impl Rng,
) -> Result<Sample, ConstructionError> {
    if chain.len() < 2 || chain.contains(&0) || allocation.len() != chain.len() {
        return Err(ConstructionError::ParameterOutOfTheoremRange(format!(
            "chain {chain:?} with allocation {allocation:?}: need at least two positive segments and one count per segment"
        )));
    }
    let available = chain.len() - 1;
    if nodes.iter().any(|&j| j >= available) || nodes.len() > available {
        return Err(ConstructionError::SingularSamplingRequestedButImpossible {
            requested: nodes.len(),
            available,
        });
    }
    let n: usize = chain.iter().sum();
    let t = ProjectiveTransform::random(field, n, rng);

    let mut model = Vec::new();
    let mut params = Vec::new();
    let mut segments = Vec::new();
    let mut smooth = Vec::new();
    let mut start = 0;
    for (i, (&deg, &k)) in chain.iter().zip(allocation).enumerate() {
        for s in distinct_nonzero(field, k, rng) {
            let mut v = vec![0u64; n + 1];
            let mut acc = 1;
            for j in 0..=deg {
                v[start + j] = acc;
                acc = field.mul(acc, s);
            }
            model.push(v);
            params.push(s);
            segments.push(i);
            smooth.push(true);
        }
        start += deg;
    }
    let mut node_starts = Vec::with_capacity(chain.len());
    let mut a = 0;
    for &deg in chain {
        a += deg;
        node_starts.push(a);
    }
    for &j in nodes {
        let mut v = vec![0u64; n + 1];
        v[node_starts[j]] = 1;
        model.push(v);
        params.push(0);
        segments.push(j + 1);
        smooth.push(false);
    }
    let points = model.iter().map(|v| Point::new(field, t.apply_vec(v))).collect::<Result<Vec<_>, _>>()?;
    Ok(Sample {
        spec: CurveSpec {
            kind: CurveKind::ReducibleRnc { chain: chain.to_vec() },
            n,
            degree: n,
            transform: transform_rows(&t),
            equations: Vec::new(),
            parameters: params,
            segments,
            linked: false,
        },
        points,
        smooth,
        retries: 0,
    })
}
