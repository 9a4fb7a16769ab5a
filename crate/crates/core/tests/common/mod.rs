#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use terracini_core::projgeom::{random_point, Subspace};
use terracini_core::seed;
use terracini_core::{Component, Point, PrimeField, ZeroDimScheme};

pub fn field() -> PrimeField {
    PrimeField::default_field()
}

pub fn rng(s: u64) -> ChaCha8Rng {
    seed::rng(s)
}

pub fn random_points(f: PrimeField, n: usize, k: usize, rng: &mut impl Rng) -> Vec<Point> {
    (0..k).map(|_| random_point(f, n, rng)).collect()
}

/// `a + s b` for random `s`.
pub fn point_on_line(f: PrimeField, a: &Point, b: &Point, rng: &mut impl Rng) -> Point {
    let s = rng.gen_range(1..f.modulus());
    let v: Vec<u64> = a.coords().iter().zip(b.coords()).map(|(&x, &y)| f.add(x, f.mul(s, y))).collect();
    Point::new(f, v).unwrap()
}

/// A random component at `p`: simple, double, or a jet in a random direction.
pub fn random_component(f: PrimeField, p: Point, rng: &mut impl Rng) -> Component {
    let n = p.ambient_dim();
    match rng.gen_range(0..3) {
        0 => Component::Simple(p),
        1 => Component::Double(p),
        _ => loop {
            let v = random_point(f, n, rng).coords().to_vec();
            if let Ok(c) = Component::jet(f, p.clone(), v) {
                break c;
            }
        },
    }
}

/// Mixed scheme with a random amount of collinear structure.
pub fn random_scheme(f: PrimeField, n: usize, max_degree: usize, rng: &mut impl Rng) -> ZeroDimScheme {
    let a = random_point(f, n, rng);
    let b = random_point(f, n, rng);
    let on_line = rng.gen_range(0..5);
    let mut comps = Vec::new();
    let mut deg = 0;
    let mut i = 0;
    loop {
        let p = if i < on_line {
            point_on_line(f, &a, &b, rng)
        } else {
            random_point(f, n, rng)
        };
        let c = random_component(f, p, rng);
        if deg + c.degree() > max_degree {
            break;
        }
        deg += c.degree();
        comps.push(c);
        i += 1;
    }
    ZeroDimScheme::new(n, comps).unwrap()
}

/// Random `m`-plane of `P^n`.
pub fn random_subspace(f: PrimeField, n: usize, m: usize, rng: &mut impl Rng) -> Subspace {
    loop {
        let s = Subspace::span_of_points(f, &random_points(f, n, m + 1, rng)).unwrap();
        if s.dim() == m {
            return s;
        }
    }
}
