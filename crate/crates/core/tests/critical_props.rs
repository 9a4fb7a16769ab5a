mod common;

use proptest::prelude::*;
use rand::Rng;

use terracini_core::cohomology::h1;
use terracini_core::constructions::families::{sample, Family};
use terracini_core::constructions::rnc_points;
use terracini_core::critical::is_critical;
use terracini_core::projgeom::Hypersurface;
use terracini_core::schemes::{double_scheme, residual};
use terracini_core::terracini::is_t1;
use terracini_core::{find_critical, Point, PrimeField, Subspace};

/// A linear form through the given points (at most `n` of them).
fn plane_through(f: PrimeField, n: usize, pts: &[Point], rng: &mut impl Rng) -> Hypersurface {
    let eqs = Subspace::span_of_points(f, pts).unwrap().equations(f);
    let mut form = vec![0u64; n + 1];
    for e in &eqs {
        let c = rng.gen_range(1..f.modulus());
        for (a, &b) in form.iter_mut().zip(e) {
            *a = f.add(*a, f.mul(c, b));
        }
    }
    Hypersurface::linear(f, form).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn critical_schemes_of_members(n in 2usize..4, d in 4usize..7, s in any::<u64>()) {
        let f = common::field();
        let x = 1 + (n * d).div_ceil(2);
        let pts = rnc_points(f, n, x, s).unwrap().points;
        let c = find_critical(f, &pts, d).unwrap();
        prop_assert_eq!(c.h1, 1);
        prop_assert_eq!(h1(f, &c.scheme, d).unwrap(), 1);
        prop_assert!(c.has_full_support(&pts));
        prop_assert!(is_critical(f, &c.scheme, d).unwrap());
        prop_assert!(c.scheme.is_subscheme_of(&double_scheme(&pts).unwrap()));
    }

    #[test]
    fn critical_schemes_of_random_hits(n in 2usize..4, d in 3usize..6, x in 4usize..14, i in 0usize..8, s in any::<u64>()) {
        let f = common::field();
        let fam = Family::for_trial(n, x, i);
        let Some(pts) = sample(f, fam, n, x, &mut common::rng(s)) else { return Ok(()); };
        prop_assume!(is_t1(f, &pts, d).unwrap().h1 > 0);
        let c = find_critical(f, &pts, d).unwrap();
        prop_assert_eq!(c.h1, 1);
        prop_assert!(c.scheme.max_component_degree() <= 2);
        prop_assert!(c.scheme.is_subscheme_of(&double_scheme(&pts).unwrap()));
        prop_assert!(is_critical(f, &c.scheme, d).unwrap());
    }

    #[test]
    fn residuals_of_critical_schemes_keep_h1(n in 2usize..4, d in 4usize..7, t in 1usize..3, k in 1usize..3, s in any::<u64>()) {
        prop_assume!(t < d);
        let f = common::field();
        let mut g = common::rng(s);
        let x = 1 + (n * d).div_ceil(2);
        let pts = rnc_points(f, n, x, s).unwrap().points;
        let z = find_critical(f, &pts, d).unwrap().scheme;
        let mut dd = plane_through(f, n, &pts[..k.min(n)], &mut g);
        for j in 1..t {
            let start = (j * 2) % x;
            let chosen: Vec<Point> = pts.iter().cycle().skip(start).take(k.min(n)).cloned().collect();
            dd = dd.product(&plane_through(f, n, &chosen, &mut g), f);
        }
        let res = residual(f, &z, &dd).unwrap();
        prop_assume!(!res.is_empty());
        prop_assert!(h1(f, &res, d - t).unwrap() > 0);
    }
}
