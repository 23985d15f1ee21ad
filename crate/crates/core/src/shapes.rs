//! Built-in polygons used by the figures and the tests.

use crate::geometry::{ConvexPolygon, Point};
use crate::scalar::Scalar;

/// Vertices `(a cos(2 pi k / m), b sin(2 pi k / m))` for `k = 0..m`.
pub fn ellipse_polygon<T: Scalar>(a: f64, b: f64, m: usize) -> ConvexPolygon<T> {
    let pts = (0..m)
        .map(|k| {
            let t = std::f64::consts::TAU * k as f64 / m as f64;
            Point::new(T::lit(a * t.cos()), T::lit(b * t.sin()))
        })
        .collect();
    ConvexPolygon::new(pts).expect("ellipse polygon is convex")
}

/// The 12-gon inscribed in the ellipse with semi-axes 8 and 5.
pub fn ellipse_12gon<T: Scalar>() -> ConvexPolygon<T> {
    ellipse_polygon(8.0, 5.0, 12)
}

/// The 16-gon inscribed in the ellipse with semi-axes 10 and 1.
pub fn thin_16gon<T: Scalar>() -> ConvexPolygon<T> {
    ellipse_polygon(10.0, 1.0, 16)
}

pub fn hexagon<T: Scalar>() -> ConvexPolygon<T> {
    ConvexPolygon::from_coords(&[(0.0, 0.0), (10.0, 0.0), (11.0, 7.0), (1.0, 12.0), (-4.0, 10.0), (-4.0, 4.0)])
        .expect("hexagon is convex")
}

/// Isosceles triangle with apex `(5, 9.01042)`.
pub fn triangle<T: Scalar>() -> ConvexPolygon<T> {
    ConvexPolygon::from_coords(&[(0.0, 0.0), (10.0, 0.0), (5.0, 9.01042)]).expect("triangle is convex")
}

pub fn unit_square<T: Scalar>() -> ConvexPolygon<T> {
    ConvexPolygon::from_coords(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).expect("square is convex")
}

pub fn regular_polygon<T: Scalar>(m: usize, radius: f64) -> ConvexPolygon<T> {
    ellipse_polygon(radius, radius, m)
}
