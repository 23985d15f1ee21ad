#![allow(dead_code)]

use fairfan_core::geometry::ConvexPolygon;
use fairfan_core::Point;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::TAU;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Convex polygon with `m` vertices: sorted random angles on a stretched,
/// rotated, shifted circle, with no two angles closer than a tenth of the
/// even spacing.
pub fn random_polygon(rng: &mut impl Rng, m: usize) -> ConvexPolygon<f64> {
    let min_gap = TAU / m as f64 / 10.0;
    let angles = loop {
        let mut a: Vec<f64> = (0..m).map(|_| rng.gen_range(0.0..TAU)).collect();
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let ok = (0..m).all(|i| {
            let next = if i + 1 < m { a[i + 1] } else { a[0] + TAU };
            next - a[i] > min_gap
        });
        if ok {
            break a;
        }
    };
    let sx = rng.gen_range(1.0..5.0);
    let sy = rng.gen_range(1.0..5.0);
    let rot = rng.gen_range(0.0..TAU);
    let off = Point::new(rng.gen_range(-10.0..10.0), rng.gen_range(-10.0..10.0));
    let (s, c) = rot.sin_cos();
    let pts = angles
        .iter()
        .map(|t| {
            let (x, y) = (sx * t.cos(), sy * t.sin());
            Point::new(c * x - s * y, s * x + c * y) + off
        })
        .collect();
    ConvexPolygon::new(pts).expect("random polygon is convex")
}

/// Random convex combination of the vertices, weights bounded away from 0.
pub fn random_interior(rng: &mut impl Rng, poly: &ConvexPolygon<f64>) -> Point {
    let w: Vec<f64> = (0..poly.len()).map(|_| rng.gen_range(0.05..1.0)).collect();
    let sum: f64 = w.iter().sum();
    poly.vertices()
        .iter()
        .zip(&w)
        .fold(Point::zero(), |acc, (v, wi)| acc + *v * (wi / sum))
}

/// Point at distance between 0.1 and 3 diameters from the centroid, outside.
pub fn random_exterior(rng: &mut impl Rng, poly: &ConvexPolygon<f64>) -> Point {
    use fairfan_core::geometry::{classify_point, PointClass};
    loop {
        let r = poly.diameter() * rng.gen_range(0.6..3.0);
        let p = poly.centroid() + Point::from_angle(rng.gen_range(0.0..TAU)) * r;
        if classify_point(poly, p) == PointClass::Exterior {
            return p;
        }
    }
}

/// Random point on an edge, away from its endpoints.
pub fn random_boundary(rng: &mut impl Rng, poly: &ConvexPolygon<f64>) -> Point {
    let (a, b) = poly.edge(rng.gen_range(0..poly.len()));
    a.lerp(b, rng.gen_range(0.1..0.9))
}

/// Random positive fractions summing to 1.
pub fn random_fractions(rng: &mut impl Rng, n: usize) -> Vec<f64> {
    let w: Vec<f64> = (0..n).map(|_| rng.gen_range(0.2..1.0)).collect();
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}
