//! Equal-area (or prescribed-fraction) convex fan partitions.
//!
//! Three constructions:
//! - [`exterior_fan`]: origin outside the polygon or on its boundary. The
//!   `n - 1` rays are unique; each is placed by inverting the sector table.
//! - [`interior_fan`]: origin inside. The first ray is free (`theta`), the
//!   other `n - 1` follow from the areas; the result is infeasible when a wedge
//!   opens wider than `pi`.
//! - [`parallel_fan`]: the fan at infinity, i.e. parallel cut lines.
//!
//! Piece geometry is materialized by half-plane clipping ([`pieces_of`]),
//! which is independent of the sector inversion. The fairness search does not
//! need piece polygons, only perimeters, and uses the `*_hits` /
//! `*_perimeters` helpers that read them straight off the sweep.

use thiserror::Error;

use crate::geometry::{
    classify_point, clip_halfplane, closed_perimeter, signed_area, ConvexPolygon, GeometryError,
    Point, PointClass, RayHit, SectorTable,
};
use crate::scalar::{normalize_angle, Scalar};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PartitionError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("fan origin lies inside the polygon; use an interior fan")]
    PointInside,
    #[error("fan origin is not strictly inside the polygon")]
    PointNotInterior,
    #[error("bad area fractions: {0}")]
    BadFractions(String),
    #[error("malformed fan: {0}")]
    MalformedFan(String),
}

/// Target area fractions of the pieces, in sweep order.
#[derive(Clone, Debug, PartialEq)]
pub struct Fractions<T> {
    values: Vec<T>,
    /// Partial sums after each of the first `n - 1` pieces.
    partial: Vec<T>,
}

impl<T: Scalar> Fractions<T> {
    pub fn new(values: Vec<T>) -> Result<Self, PartitionError> {
        if values.is_empty() {
            return Err(PartitionError::BadFractions("no pieces".into()));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite() || **v <= T::zero()) {
            return Err(PartitionError::BadFractions(format!(
                "fraction {v} is not positive"
            )));
        }
        let sum = values.iter().fold(T::zero(), |a, &b| a + b);
        if (sum - T::one()).abs() > T::lit(1e-9) {
            return Err(PartitionError::BadFractions(format!(
                "fractions sum to {sum}, not 1"
            )));
        }
        let values: Vec<T> = values.into_iter().map(|v| v / sum).collect();
        let mut partial = Vec::with_capacity(values.len().saturating_sub(1));
        let mut acc = T::zero();
        for v in &values[..values.len() - 1] {
            acc = acc + *v;
            partial.push(acc);
        }
        Ok(Self { values, partial })
    }

    /// `n` equal fractions.
    pub fn equal(n: usize) -> Result<Self, PartitionError> {
        if n == 0 {
            return Err(PartitionError::BadFractions("no pieces".into()));
        }
        let f = T::one() / T::lit(n as f64);
        let partial = (1..n).map(|j| T::lit(j as f64) / T::lit(n as f64)).collect();
        Ok(Self {
            values: vec![f; n],
            partial,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.values.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    #[inline]
    pub fn values(&self) -> &[T] {
        &self.values
    }

    /// Cumulative fraction after each of the first `n - 1` pieces.
    #[inline]
    pub fn partial_sums(&self) -> &[T] {
        &self.partial
    }

    pub fn is_uniform(&self) -> bool {
        let f = self.values[0];
        self.values.iter().all(|&v| (v - f).abs() <= T::lit(1e-12))
    }
}

/// Where the rays of a fan start.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FanOrigin<T> {
    Finite(Point<T>),
    /// Parallel cuts; `direction` is the common line direction in radians.
    AtInfinity { direction: T },
}

/// A convex fan.
///
/// For a finite origin `rays` holds ray angles in sweep order: `n` of them
/// around an interior origin (`closed`), `n - 1` across the viewing wedge of
/// an exterior or boundary origin. At infinity it holds the offsets of the
/// `n - 1` cut lines along the right-hand normal of `direction`, so a
/// vertical direction sweeps from left to right.
#[derive(Clone, Debug, PartialEq)]
pub struct Fan<T> {
    pub origin: FanOrigin<T>,
    pub rays: Vec<T>,
    pub closed: bool,
}

impl<T: Scalar> Fan<T> {
    /// Number of pieces the fan cuts.
    pub fn piece_count(&self) -> usize {
        if self.closed {
            self.rays.len().max(1)
        } else {
            self.rays.len() + 1
        }
    }

    /// Angular gaps between successive rays (including the wrap-around gap
    /// when closed). Empty at infinity.
    pub fn gaps(&self) -> Vec<T> {
        if matches!(self.origin, FanOrigin::AtInfinity { .. }) || self.rays.len() < 2 {
            if self.closed && self.rays.len() == 1 {
                return vec![T::TAU()];
            }
            return Vec::new();
        }
        let n = self.rays.len();
        let pairs = if self.closed { n } else { n - 1 };
        (0..pairs)
            .map(|j| {
                let g = normalize_angle(self.rays[(j + 1) % n] - self.rays[j]);
                // Two coincident rays on a closed fan enclose nothing.
                if g == T::zero() && self.closed && n == 2 {
                    T::TAU()
                } else {
                    g
                }
            })
            .collect()
    }

    /// Every successive gap is at most `pi + eps`.
    pub fn is_convex(&self, eps: T) -> bool {
        self.gaps().iter().all(|&g| g <= T::PI() + eps)
    }
}

/// One piece of a partition.
#[derive(Clone, Debug, PartialEq)]
pub struct Piece<T> {
    pub vertices: Vec<Point<T>>,
    pub area: T,
    pub perimeter: T,
}

impl<T: Scalar> Piece<T> {
    fn from_vertices(vertices: Vec<Point<T>>) -> Self {
        let area = signed_area(&vertices).abs();
        let perimeter = closed_perimeter(&vertices);
        Self {
            vertices,
            area,
            perimeter,
        }
    }
}

/// A fan with the pieces it cuts, in sweep order.
#[derive(Clone, Debug, PartialEq)]
pub struct FanPartition<T> {
    pub fan: Fan<T>,
    pub pieces: Vec<Piece<T>>,
    pub target_fractions: Vec<T>,
}

impl<T: Scalar> FanPartition<T> {
    pub fn perimeters(&self) -> Vec<T> {
        self.pieces.iter().map(|p| p.perimeter).collect()
    }

    pub fn areas(&self) -> Vec<T> {
        self.pieces.iter().map(|p| p.area).collect()
    }

    /// Largest relative deviation of a piece area from its target.
    pub fn max_area_error(&self, total_area: T) -> T {
        self.pieces
            .iter()
            .zip(&self.target_fractions)
            .map(|(p, &f)| {
                let target = f * total_area;
                (p.area - target).abs() / target
            })
            .fold(T::zero(), T::max)
    }
}

/// Result of an interior fan request.
#[derive(Clone, Debug, PartialEq)]
pub enum InteriorFan<T> {
    Feasible(FanPartition<T>),
    /// Some wedge would open wider than `pi`, so its piece is not convex.
    Infeasible { widest_gap: T },
}

impl<T: Scalar> InteriorFan<T> {
    pub fn feasible(self) -> Option<FanPartition<T>> {
        match self {
            InteriorFan::Feasible(p) => Some(p),
            InteriorFan::Infeasible { .. } => None,
        }
    }
}

/// Slack (radians) on the `pi` bound for successive rays.
pub fn angle_eps<T: Scalar>() -> T {
    T::lit(T::ANGLE_EPS)
}

fn whole_polygon<T: Scalar>(polygon: &ConvexPolygon<T>, origin: FanOrigin<T>, closed: bool) -> FanPartition<T> {
    FanPartition {
        fan: Fan {
            origin,
            rays: Vec::new(),
            closed,
        },
        pieces: vec![Piece {
            vertices: polygon.vertices().to_vec(),
            area: polygon.area(),
            perimeter: polygon.perimeter(),
        }],
        target_fractions: vec![T::one()],
    }
}

/// Rays of the unique fan from an exterior or boundary apex, one per partial
/// sum, in sweep order.
pub fn open_hits<T: Scalar>(table: &SectorTable<T>, fractions: &Fractions<T>) -> Vec<RayHit<T>> {
    let total = table.total_area();
    fractions
        .partial_sums()
        .iter()
        .map(|&f| table.hit_at_area(f * total))
        .collect()
}

/// Piece perimeters for an open (exterior/boundary) fan given its ray hits.
pub fn open_perimeters<T: Scalar>(table: &SectorTable<T>, hits: &[RayHit<T>], out: &mut Vec<T>) {
    out.clear();
    let mut far = T::zero();
    let mut near = T::zero();
    let mut chord = T::zero();
    for h in hits {
        out.push((h.far_arc - far) + (h.near_arc - near) + chord + h.chord());
        far = h.far_arc;
        near = h.near_arc;
        chord = h.chord();
    }
    out.push((table.far_length() - far) + (table.near_length() - near) + chord);
}

/// Rays of an interior fan whose first ray sweeps area `start_area` from the
/// table's start direction; the rest follow the partial sums.
pub fn closed_hits<T: Scalar>(
    table: &SectorTable<T>,
    start_area: T,
    fractions: &Fractions<T>,
    out: &mut Vec<RayHit<T>>,
) {
    out.clear();
    let total = table.total_area();
    let wrap = |a: T| if a >= total { a - total } else { a };
    out.push(table.hit_at_area(wrap(start_area)));
    for &f in fractions.partial_sums() {
        out.push(table.hit_at_area(wrap(start_area + f * total)));
    }
}

/// Piece perimeters and the widest angular gap of a closed (interior) fan.
pub fn closed_perimeters<T: Scalar>(table: &SectorTable<T>, hits: &[RayHit<T>], out: &mut Vec<T>) -> T {
    out.clear();
    let n = hits.len();
    let perim = table.far_length();
    let mut widest = T::zero();
    for j in 0..n {
        let a = &hits[j];
        let b = &hits[(j + 1) % n];
        let mut arc = b.far_arc - a.far_arc;
        let mut gap = b.sweep - a.sweep;
        if arc < T::zero() || (n == 1) {
            arc = arc + perim;
        }
        if gap <= T::zero() {
            gap = gap + T::TAU();
        }
        widest = widest.max(gap);
        out.push(arc + a.far.norm() + b.far.norm());
    }
    widest
}

/// The unique fan from an exterior (or boundary) origin `p` cutting pieces of
/// the given fractions.
pub fn exterior_fan<T: Scalar>(
    polygon: &ConvexPolygon<T>,
    p: Point<T>,
    fractions: &Fractions<T>,
) -> Result<FanPartition<T>, PartitionError> {
    if !p.is_finite() {
        return Err(PartitionError::MalformedFan("non-finite origin".into()));
    }
    if classify_point(polygon, p) == PointClass::Interior {
        return Err(PartitionError::PointInside);
    }
    if fractions.len() == 1 {
        return Ok(whole_polygon(polygon, FanOrigin::Finite(p), false));
    }
    let table = SectorTable::new(polygon, p);
    let rays: Vec<T> = open_hits(&table, fractions).iter().map(|h| h.angle).collect();
    let fan = Fan {
        origin: FanOrigin::Finite(p),
        rays,
        closed: false,
    };
    let pieces = pieces_of(polygon, &fan)?;
    Ok(FanPartition {
        fan,
        pieces,
        target_fractions: fractions.values().to_vec(),
    })
}

/// Interior fan with its first ray at `theta`.
pub fn interior_fan<T: Scalar>(
    polygon: &ConvexPolygon<T>,
    p: Point<T>,
    fractions: &Fractions<T>,
    theta: T,
) -> Result<InteriorFan<T>, PartitionError> {
    if classify_point(polygon, p) != PointClass::Interior {
        return Err(PartitionError::PointNotInterior);
    }
    if fractions.len() == 1 {
        return Ok(InteriorFan::Feasible(whole_polygon(
            polygon,
            FanOrigin::Finite(p),
            true,
        )));
    }
    let table = SectorTable::new(polygon, p);
    let theta = normalize_angle(theta);
    let start = table.hit_at_sweep(table.sweep_of_angle(theta)).area;
    let mut hits = Vec::new();
    closed_hits(&table, start, fractions, &mut hits);
    let mut perims = Vec::new();
    let widest = closed_perimeters(&table, &hits, &mut perims);
    if widest > T::PI() + angle_eps() {
        return Ok(InteriorFan::Infeasible { widest_gap: widest });
    }
    let mut rays: Vec<T> = hits.iter().map(|h| h.angle).collect();
    rays[0] = theta;
    let fan = Fan {
        origin: FanOrigin::Finite(p),
        rays,
        closed: true,
    };
    let pieces = pieces_of(polygon, &fan)?;
    Ok(InteriorFan::Feasible(FanPartition {
        fan,
        pieces,
        target_fractions: fractions.values().to_vec(),
    }))
}

/// Area of the polygon on the side `normal . x <= h`.
fn area_below<T: Scalar>(polygon: &ConvexPolygon<T>, normal: Point<T>, h: T) -> T {
    let anchor = normal * h;
    let part = clip_halfplane(polygon.vertices(), anchor, -normal, T::zero());
    signed_area(&part).abs()
}

/// Parallel cuts along `direction` (the fan at infinity).
pub fn parallel_fan<T: Scalar>(
    polygon: &ConvexPolygon<T>,
    direction: T,
    fractions: &Fractions<T>,
) -> Result<FanPartition<T>, PartitionError> {
    let direction = normalize_angle(direction);
    let origin = FanOrigin::AtInfinity { direction };
    if fractions.len() == 1 {
        return Ok(whole_polygon(polygon, origin, false));
    }
    let normal = -Point::from_angle(direction).perp();
    let (mut lo, mut hi) = (T::infinity(), T::neg_infinity());
    for v in polygon.vertices() {
        let h = normal.dot(*v);
        lo = lo.min(h);
        hi = hi.max(h);
    }
    let total = polygon.area();
    let tol = T::lit(1e-12) * polygon.diameter();
    let mut offsets = Vec::with_capacity(fractions.len() - 1);
    let mut floor = lo;
    for &f in fractions.partial_sums() {
        let target = f * total;
        let (mut a, mut b) = (floor, hi);
        while b - a > tol {
            let mid = (a + b) * T::half();
            if mid <= a || mid >= b {
                break;
            }
            if area_below(polygon, normal, mid) < target {
                a = mid;
            } else {
                b = mid;
            }
        }
        let h = (a + b) * T::half();
        offsets.push(h);
        floor = h;
    }
    let fan = Fan {
        origin,
        rays: offsets,
        closed: false,
    };
    let pieces = pieces_of(polygon, &fan)?;
    Ok(FanPartition {
        fan,
        pieces,
        target_fractions: fractions.values().to_vec(),
    })
}

/// Cuts the polygon along `fan` by half-plane clipping.
pub fn pieces_of<T: Scalar>(
    polygon: &ConvexPolygon<T>,
    fan: &Fan<T>,
) -> Result<Vec<Piece<T>>, PartitionError> {
    let merge = T::lit(1e-12) * polygon.diameter();
    let base = polygon.vertices();
    if fan.rays.is_empty() {
        return Ok(vec![Piece::from_vertices(base.to_vec())]);
    }
    if fan.rays.iter().any(|r| !r.is_finite()) {
        return Err(PartitionError::MalformedFan("non-finite ray".into()));
    }
    let mut pieces = Vec::with_capacity(fan.piece_count());
    match fan.origin {
        FanOrigin::AtInfinity { direction } => {
            let normal = -Point::from_angle(direction).perp();
            if fan.rays.windows(2).any(|w| w[1] < w[0]) {
                return Err(PartitionError::MalformedFan("cut offsets not increasing".into()));
            }
            let mut rest = base.to_vec();
            for &h in &fan.rays {
                let anchor = normal * h;
                pieces.push(Piece::from_vertices(clip_halfplane(&rest, anchor, -normal, merge)));
                rest = clip_halfplane(&rest, anchor, normal, merge);
            }
            pieces.push(Piece::from_vertices(rest));
        }
        FanOrigin::Finite(p) => {
            let eps = angle_eps::<T>();
            if !fan.is_convex(eps) {
                return Err(PartitionError::MalformedFan("successive rays more than pi apart".into()));
            }
            // Left side of ray at angle a: cross(u, x - p) >= 0, i.e. normal perp(u).
            let left = |a: T| Point::from_angle(a).perp();
            let n = fan.rays.len();
            if fan.closed {
                if n == 1 {
                    return Err(PartitionError::MalformedFan("single ray around an interior origin".into()));
                }
                for j in 0..n {
                    let a = fan.rays[j];
                    let b = fan.rays[(j + 1) % n];
                    let wedge = clip_halfplane(base, p, left(a), merge);
                    let wedge = clip_halfplane(&wedge, p, -left(b), merge);
                    pieces.push(Piece::from_vertices(wedge));
                }
            } else {
                pieces.push(Piece::from_vertices(clip_halfplane(base, p, -left(fan.rays[0]), merge)));
                for j in 0..n - 1 {
                    let wedge = clip_halfplane(base, p, left(fan.rays[j]), merge);
                    let wedge = clip_halfplane(&wedge, p, -left(fan.rays[j + 1]), merge);
                    pieces.push(Piece::from_vertices(wedge));
                }
                pieces.push(Piece::from_vertices(clip_halfplane(base, p, left(fan.rays[n - 1]), merge)));
            }
        }
    }
    if pieces.iter().any(|pc| pc.vertices.len() < 3) {
        return Err(PartitionError::MalformedFan("a ray misses the polygon".into()));
    }
    Ok(pieces)
}
