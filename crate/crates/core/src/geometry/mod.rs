//! Planar convex kernel.
//!
//! Everything here works on a validated [`ConvexPolygon`]: counter-clockwise,
//! strictly convex, no repeated vertices. Tolerances are relative to the
//! polygon diameter so the same thresholds hold for a unit square and for a
//! polygon measured in kilometres.

mod sector;

use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::scalar::{normalize_angle, Scalar};

pub use sector::{ApexKind, RayHit, Sector, SectorTable};

/// A point (or free vector) in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    #[inline]
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero())
    }

    /// Unit vector at `angle` radians counter-clockwise from +x.
    #[inline]
    pub fn from_angle(angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c, s)
    }

    #[inline]
    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product; positive when `other` lies
    /// counter-clockwise of `self`.
    #[inline]
    pub fn cross(self, other: Self) -> T {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn distance(self, other: Self) -> T {
        (self - other).norm()
    }

    /// Angle of the vector, normalized to `[0, 2pi)`.
    #[inline]
    pub fn angle(self) -> T {
        normalize_angle(self.y.atan2(self.x))
    }

    /// Counter-clockwise perpendicular.
    #[inline]
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    #[inline]
    pub fn lerp(self, other: Self, t: T) -> Self {
        self + (other - self) * t
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    /// Signed angle from `self` to `other` in `(-pi, pi]`.
    #[inline]
    pub fn angle_to(self, other: Self) -> T {
        self.cross(other).atan2(self.dot(other))
    }

    pub fn cast<U: Scalar>(self) -> Point<U> {
        Point::new(U::lit(self.x.to_f64_lossy()), U::lit(self.y.to_f64_lossy()))
    }
}

impl<T: Scalar> Add for Point<T> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<T: Scalar> Sub for Point<T> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<T: Scalar> Mul<T> for Point<T> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: T) -> Self {
        Self::new(self.x * rhs, self.y * rhs)
    }
}

impl<T: Scalar> Neg for Point<T> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

/// Half-line from `origin` at `angle` (radians, CCW from +x, in `[0, 2pi)`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ray<T> {
    pub origin: Point<T>,
    pub angle: T,
}

impl<T: Scalar> Ray<T> {
    pub fn new(origin: Point<T>, angle: T) -> Self {
        Self {
            origin,
            angle: normalize_angle(angle),
        }
    }

    #[inline]
    pub fn direction(&self) -> Point<T> {
        Point::from_angle(self.angle)
    }
}

/// Relative tolerances; each is multiplied by the polygon diameter (or its
/// square for cross products) before use.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances<T> {
    pub convexity: T,
    pub classify: T,
    pub parallel: T,
}

impl<T: Scalar> Default for Tolerances<T> {
    fn default() -> Self {
        Self {
            convexity: T::lit(T::GEOMETRIC_EPS),
            classify: T::lit(T::GEOMETRIC_EPS),
            parallel: T::lit(T::PARALLEL_EPS),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {0} has a non-finite coordinate")]
    NonFinite(usize),
    #[error("vertices {0} and {1} coincide")]
    DegenerateEdge(usize, usize),
    #[error("polygon is not strictly convex at vertices ({0}, {1}, {2})")]
    NotConvex(usize, usize, usize),
    #[error("point is outside the polygon")]
    PointNotInRegion,
}

/// Where a point sits relative to a polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointClass {
    Interior,
    Boundary,
    Exterior,
}

/// Validated counter-clockwise, strictly convex polygon.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexPolygon<T> {
    vertices: Vec<Point<T>>,
    area: T,
    perimeter: T,
    diameter: T,
    reversed: bool,
    tol: Tolerances<T>,
}

impl<T: Scalar> ConvexPolygon<T> {
    /// Validates with default tolerances. See [`validate_polygon_with`].
    pub fn new(raw: Vec<Point<T>>) -> Result<Self, GeometryError> {
        validate_polygon_with(raw, Tolerances::default())
    }

    /// Convenience constructor from coordinate pairs.
    pub fn from_coords(coords: &[(f64, f64)]) -> Result<Self, GeometryError> {
        Self::new(
            coords
                .iter()
                .map(|&(x, y)| Point::new(T::lit(x), T::lit(y)))
                .collect(),
        )
    }

    #[inline]
    pub fn vertices(&self) -> &[Point<T>] {
        &self.vertices
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    #[inline]
    pub fn vertex(&self, i: usize) -> Point<T> {
        self.vertices[i % self.vertices.len()]
    }

    /// Edge `i` runs from vertex `i` to vertex `i + 1`.
    #[inline]
    pub fn edge(&self, i: usize) -> (Point<T>, Point<T>) {
        (self.vertex(i), self.vertex(i + 1))
    }

    #[inline]
    pub fn area(&self) -> T {
        self.area
    }

    #[inline]
    pub fn perimeter(&self) -> T {
        self.perimeter
    }

    /// Largest vertex-to-vertex distance; the length scale for tolerances.
    #[inline]
    pub fn diameter(&self) -> T {
        self.diameter
    }

    /// True when the input was clockwise and had to be reversed.
    #[inline]
    pub fn was_reversed(&self) -> bool {
        self.reversed
    }

    #[inline]
    pub fn tolerances(&self) -> &Tolerances<T> {
        &self.tol
    }

    /// Width of the boundary band used by [`classify_point`].
    #[inline]
    pub fn boundary_band(&self) -> T {
        self.tol.classify * self.diameter
    }

    pub fn centroid(&self) -> Point<T> {
        let mut cx = T::zero();
        let mut cy = T::zero();
        let o = self.vertices[0];
        for i in 1..self.len() - 1 {
            let a = self.vertices[i] - o;
            let b = self.vertices[i + 1] - o;
            let w = a.cross(b);
            cx = cx + (a.x + b.x) * w;
            cy = cy + (a.y + b.y) * w;
        }
        let six_area = T::lit(6.0) * self.area;
        o + Point::new(cx / six_area, cy / six_area)
    }

    /// Axis-aligned bounding box `(min, max)`.
    pub fn bounding_box(&self) -> (Point<T>, Point<T>) {
        let mut lo = self.vertices[0];
        let mut hi = self.vertices[0];
        for v in &self.vertices[1..] {
            lo = Point::new(lo.x.min(v.x), lo.y.min(v.y));
            hi = Point::new(hi.x.max(v.x), hi.y.max(v.y));
        }
        (lo, hi)
    }

    /// Applies `p -> scale * R(rotation) p + offset` to every vertex.
    pub fn transformed(&self, rotation: T, scale: T, offset: Point<T>) -> Self {
        let (s, c) = rotation.sin_cos();
        let map = |p: Point<T>| {
            Point::new(c * p.x - s * p.y, s * p.x + c * p.y) * scale + offset
        };
        validate_polygon_with(self.vertices.iter().map(|&p| map(p)).collect(), self.tol)
            .expect("similarity transform preserves convexity")
    }

    /// Signed distance from `p` to the supporting line of edge `i`; positive
    /// on the polygon's side.
    #[inline]
    pub fn edge_signed_distance(&self, i: usize, p: Point<T>) -> T {
        let (a, b) = self.edge(i);
        let e = b - a;
        e.cross(p - a) / e.norm()
    }
}

/// Validates raw vertices into a [`ConvexPolygon`] using default tolerances.
pub fn validate_polygon<T: Scalar>(raw: Vec<Point<T>>) -> Result<ConvexPolygon<T>, GeometryError> {
    validate_polygon_with(raw, Tolerances::default())
}

pub fn validate_polygon_with<T: Scalar>(
    mut raw: Vec<Point<T>>,
    tol: Tolerances<T>,
) -> Result<ConvexPolygon<T>, GeometryError> {
    let m = raw.len();
    if m < 3 {
        return Err(GeometryError::TooFewVertices(m));
    }
    if let Some(i) = raw.iter().position(|p| !p.is_finite()) {
        return Err(GeometryError::NonFinite(i));
    }

    let mut diameter = T::zero();
    for i in 0..m {
        for j in i + 1..m {
            diameter = diameter.max(raw[i].distance(raw[j]));
        }
    }
    let min_edge = tol.classify * diameter;
    for i in 0..m {
        let j = (i + 1) % m;
        if raw[i].distance(raw[j]) <= min_edge {
            return Err(GeometryError::DegenerateEdge(i, j));
        }
    }

    let signed = signed_area(&raw);
    let reversed = signed < T::zero();
    if reversed {
        raw.reverse();
    }

    let min_cross = tol.convexity * diameter * diameter;
    let mut turning = T::zero();
    for i in 0..m {
        let prev = raw[(i + m - 1) % m];
        let cur = raw[i];
        let next = raw[(i + 1) % m];
        let e0 = cur - prev;
        let e1 = next - cur;
        let c = e0.cross(e1);
        if c <= min_cross {
            return Err(GeometryError::NotConvex((i + m - 1) % m, i, (i + 1) % m));
        }
        turning = turning + e0.angle_to(e1);
    }
    // Every turn is left, but a star polygon winds more than once.
    if (turning - T::TAU()).abs() > T::lit(1e-3) {
        return Err(GeometryError::NotConvex(m - 1, 0, 1));
    }

    let area = signed.abs();
    let perimeter = (0..m).fold(T::zero(), |acc, i| acc + raw[i].distance(raw[(i + 1) % m]));
    Ok(ConvexPolygon {
        vertices: raw,
        area,
        perimeter,
        diameter,
        reversed,
        tol,
    })
}

/// Shoelace signed area; positive for counter-clockwise vertex order.
pub fn signed_area<T: Scalar>(pts: &[Point<T>]) -> T {
    if pts.len() < 3 {
        return T::zero();
    }
    let o = pts[0];
    let mut acc = T::zero();
    for i in 1..pts.len() - 1 {
        acc = acc + (pts[i] - o).cross(pts[i + 1] - o);
    }
    acc * T::half()
}

/// Length of the closed chain through `pts`.
pub fn closed_perimeter<T: Scalar>(pts: &[Point<T>]) -> T {
    let m = pts.len();
    if m < 2 {
        return T::zero();
    }
    (0..m).fold(T::zero(), |acc, i| acc + pts[i].distance(pts[(i + 1) % m]))
}

pub fn area<T: Scalar>(polygon: &ConvexPolygon<T>) -> T {
    polygon.area()
}

pub fn perimeter<T: Scalar>(polygon: &ConvexPolygon<T>) -> T {
    polygon.perimeter()
}

/// Minimum signed distance to the edge lines; positive inside.
pub fn depth<T: Scalar>(polygon: &ConvexPolygon<T>, p: Point<T>) -> T {
    (0..polygon.len())
        .map(|i| polygon.edge_signed_distance(i, p))
        .fold(T::infinity(), T::min)
}

pub fn classify_point<T: Scalar>(polygon: &ConvexPolygon<T>, p: Point<T>) -> PointClass {
    let d = depth(polygon, p);
    let band = polygon.boundary_band();
    if d > band {
        PointClass::Interior
    } else if d < -band {
        PointClass::Exterior
    } else {
        PointClass::Boundary
    }
}

/// Parameter interval `[t_in, t_out]` of the line `origin + t * dir` inside the
/// polygon, or `None` if the line misses it.
pub fn line_clip<T: Scalar>(
    polygon: &ConvexPolygon<T>,
    origin: Point<T>,
    dir: Point<T>,
) -> Option<(T, T)> {
    let mut t_in = T::neg_infinity();
    let mut t_out = T::infinity();
    for i in 0..polygon.len() {
        let (a, b) = polygon.edge(i);
        let e = b - a;
        // Inside iff cross(e, x - a) >= 0.
        let num = e.cross(origin - a);
        let den = e.cross(dir);
        if den.abs() <= T::epsilon() * e.norm() * dir.norm() {
            if num < T::zero() {
                return None;
            }
            continue;
        }
        let t = -num / den;
        if den > T::zero() {
            t_in = t_in.max(t);
        } else {
            t_out = t_out.min(t);
        }
        if t_in > t_out {
            return None;
        }
    }
    Some((t_in, t_out))
}

/// Length of `ray` intersected with the polygon (zero when it misses or only
/// grazes a vertex).
pub fn chord_length<T: Scalar>(polygon: &ConvexPolygon<T>, ray: &Ray<T>) -> T {
    match line_clip(polygon, ray.origin, ray.direction()) {
        Some((t_in, t_out)) => {
            let start = t_in.max(T::zero());
            (t_out - start).max(T::zero())
        }
        None => T::zero(),
    }
}

/// Distance from `p` to the segment `[a, b]`.
pub fn segment_distance<T: Scalar>(p: Point<T>, a: Point<T>, b: Point<T>) -> T {
    let e = b - a;
    let len2 = e.dot(e);
    let t = if len2 > T::zero() {
        ((p - a).dot(e) / len2).max(T::zero()).min(T::one())
    } else {
        T::zero()
    };
    p.distance(a + e * t)
}

/// `(d_min, d_max)`: nearest and farthest boundary distances from a point in
/// the closed region. The farthest boundary point of a convex polygon is a
/// vertex.
pub fn boundary_distance_extremes<T: Scalar>(
    polygon: &ConvexPolygon<T>,
    p: Point<T>,
) -> Result<(T, T), GeometryError> {
    if classify_point(polygon, p) == PointClass::Exterior {
        return Err(GeometryError::PointNotInRegion);
    }
    let d_max = polygon
        .vertices()
        .iter()
        .map(|v| v.distance(p))
        .fold(T::zero(), T::max);
    let d_min = (0..polygon.len())
        .map(|i| {
            let (a, b) = polygon.edge(i);
            segment_distance(p, a, b)
        })
        .fold(T::infinity(), T::min);
    Ok((d_min, d_max))
}

/// Intersection of two lines given by a point and a direction each, or `None`
/// when they are parallel within `sin_tol`.
pub fn line_intersection<T: Scalar>(
    p: Point<T>,
    u: Point<T>,
    q: Point<T>,
    v: Point<T>,
    sin_tol: T,
) -> Option<Point<T>> {
    let den = u.cross(v);
    if den.abs() <= sin_tol * u.norm() * v.norm() {
        return None;
    }
    let t = (q - p).cross(v) / den;
    Some(p + u * t)
}

/// Exterior points where two extended edges meet. Parallel pairs meet at
/// infinity and are omitted.
pub fn edge_extension_intersections<T: Scalar>(polygon: &ConvexPolygon<T>) -> Vec<Point<T>> {
    let m = polygon.len();
    let dedupe = polygon.boundary_band();
    let mut out: Vec<Point<T>> = Vec::new();
    for i in 0..m {
        let (a, b) = polygon.edge(i);
        for j in i + 1..m {
            let (c, d) = polygon.edge(j);
            let Some(x) = line_intersection(a, b - a, c, d - c, polygon.tolerances().parallel)
            else {
                continue;
            };
            if classify_point(polygon, x) != PointClass::Exterior {
                continue;
            }
            if out.iter().all(|q| q.distance(x) > dedupe) {
                out.push(x);
            }
        }
    }
    out
}

/// Keeps the part of a convex polygon (vertex list, any orientation) on the
/// side `normal . (x - anchor) >= 0`. Near-duplicate output vertices within
/// `merge` are collapsed.
pub fn clip_halfplane<T: Scalar>(
    pts: &[Point<T>],
    anchor: Point<T>,
    normal: Point<T>,
    merge: T,
) -> Vec<Point<T>> {
    let m = pts.len();
    let mut out: Vec<Point<T>> = Vec::with_capacity(m + 2);
    if m == 0 {
        return out;
    }
    let side = |p: Point<T>| normal.dot(p - anchor);
    let push = |out: &mut Vec<Point<T>>, p: Point<T>| {
        if out.last().map_or(true, |q: &Point<T>| q.distance(p) > merge) {
            out.push(p);
        }
    };
    for i in 0..m {
        let cur = pts[i];
        let next = pts[(i + 1) % m];
        let sc = side(cur);
        let sn = side(next);
        if sc >= T::zero() {
            push(&mut out, cur);
        }
        if (sc >= T::zero()) != (sn >= T::zero()) {
            let t = sc / (sc - sn);
            push(&mut out, cur.lerp(next, t));
        }
    }
    while out.len() > 1 && out[0].distance(out[out.len() - 1]) <= merge {
        out.pop();
    }
    out
}

/// Convexity test tolerant of collinear and near-duplicate vertices; used to
/// check partition pieces.
pub fn is_convex_chain<T: Scalar>(pts: &[Point<T>], rel_tol: T) -> bool {
    let m = pts.len();
    if m < 3 {
        return false;
    }
    let mut scale = T::zero();
    for p in pts {
        for q in pts {
            scale = scale.max(p.distance(*q));
        }
    }
    let tol = rel_tol * scale * scale;
    if signed_area(pts) <= T::zero() {
        return false;
    }
    for i in 0..m {
        let a = pts[(i + m - 1) % m];
        let b = pts[i];
        let c = pts[(i + 1) % m];
        if (b - a).cross(c - b) < -tol {
            return false;
        }
    }
    true
}
