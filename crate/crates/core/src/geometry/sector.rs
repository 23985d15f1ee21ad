//! Angular sweep of a convex polygon around an apex.
//!
//! The sweep is cut at every direction that passes through a polygon vertex.
//! Inside one sector a ray leaves the polygon through a single "far" edge and,
//! for an exterior apex, enters through a single "near" edge. With `s` the
//! parameter of the far hit point along that edge, the swept area is linear in
//! `s` when there is no near edge and a ratio of quadratics otherwise, so the
//! ray bounding a prescribed area is found in closed form.

use crate::geometry::{classify_point, ConvexPolygon, Point, PointClass};
use crate::scalar::{normalize_angle, Scalar};

/// Position of the apex relative to the polygon.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ApexKind {
    /// Full `2pi` sweep.
    Interior,
    /// Sweep over the closed tangent cone (`pi` on an edge, the interior angle
    /// at a vertex). `vertex` is set when the apex sits on a polygon vertex.
    Boundary { vertex: Option<usize> },
    /// Sweep over the viewing wedge, which is narrower than `pi`.
    Exterior,
}

/// One angular sector of the sweep. Points are relative to the apex.
#[derive(Clone, Copy, Debug)]
pub struct Sector<T> {
    pub sweep0: T,
    pub sweep1: T,
    pub far_a: Point<T>,
    pub far_b: Point<T>,
    /// Near-edge hits; both zero when the apex itself bounds the sweep.
    pub near_a: Point<T>,
    pub near_b: Point<T>,
    /// Cumulative swept area at `sweep0`.
    pub area0: T,
    pub area: T,
    /// Boundary arclength positions at `sweep0`.
    pub far_arc0: T,
    pub near_arc0: T,
    has_near: bool,
}

/// Where a ray from the apex meets the boundary.
#[derive(Clone, Copy, Debug)]
pub struct RayHit<T> {
    /// Offset from the start direction of the sweep.
    pub sweep: T,
    /// Absolute direction in `[0, 2pi)`.
    pub angle: T,
    pub sector: usize,
    /// Parameter of the far hit along the sector's far segment.
    pub s: T,
    /// Exit point, relative to the apex.
    pub far: Point<T>,
    /// Entry point, relative to the apex (zero unless the apex is exterior).
    pub near: Point<T>,
    /// Cumulative swept area up to this ray.
    pub area: T,
    pub far_arc: T,
    pub near_arc: T,
}

impl<T: Scalar> RayHit<T> {
    /// Length of the ray inside the polygon.
    #[inline]
    pub fn chord(&self) -> T {
        (self.far.norm() - self.near.norm()).max(T::zero())
    }
}

/// Boundary chain in sweep order: relative points, their sweep offsets and
/// arclength positions.
struct Chain<T> {
    pts: Vec<Point<T>>,
    sweep: Vec<T>,
    arc: Vec<T>,
    total: T,
}

impl<T: Scalar> Chain<T> {
    fn new(pts: Vec<Point<T>>, lead: T, tail: T) -> Self {
        let mut sweep = Vec::with_capacity(pts.len());
        let mut arc = Vec::with_capacity(pts.len());
        sweep.push(T::zero());
        arc.push(lead);
        for k in 1..pts.len() {
            let step = pts[k - 1].angle_to(pts[k]).max(T::zero());
            sweep.push(sweep[k - 1] + step);
            arc.push(arc[k - 1] + pts[k - 1].distance(pts[k]));
        }
        let total = *arc.last().unwrap() + tail;
        Self {
            pts,
            sweep,
            arc,
            total,
        }
    }

    /// First edge reaching sweep `b1`, advancing the cursor. Callers visit
    /// sectors in order, so this is the edge spanning the current sector.
    fn edge_for(&self, cursor: &mut usize, b1: T) -> usize {
        let last = self.pts.len() - 2;
        while *cursor < last && self.sweep[*cursor + 1] < b1 {
            *cursor += 1;
        }
        *cursor
    }

    /// Hit of the direction `dir` on edge `e`, with its arclength position.
    fn hit(&self, e: usize, dir: Point<T>, at_vertex: Option<usize>) -> (Point<T>, T) {
        if let Some(v) = at_vertex {
            if v == e || v == e + 1 {
                return (self.pts[v], self.arc[v]);
            }
        }
        let a = self.pts[e];
        let d = self.pts[e + 1] - a;
        let den = dir.cross(d);
        let t = if den.abs() > T::zero() {
            a.cross(d) / den
        } else {
            T::zero()
        };
        let p = dir * t;
        let along = (p - a).norm().min(d.norm());
        (p, self.arc[e] + along)
    }
}

/// Sweep of a polygon around an apex, cut at vertex directions.
#[derive(Clone, Debug)]
pub struct SectorTable<T> {
    apex: Point<T>,
    kind: ApexKind,
    start_angle: T,
    sweep_total: T,
    area_total: T,
    far_total: T,
    near_total: T,
    sectors: Vec<Sector<T>>,
    /// Unit directions of the first and last vertices of the sweep; for a
    /// boundary or exterior apex these are the tangent directions.
    start_dir: Point<T>,
    end_dir: Point<T>,
    /// Lengths of edges lying on the start and end tangent lines.
    tangent_edges: [Option<T>; 2],
}

impl<T: Scalar> SectorTable<T> {
    pub fn new(polygon: &ConvexPolygon<T>, apex: Point<T>) -> Self {
        match classify_point(polygon, apex) {
            PointClass::Interior => Self::interior(polygon, apex),
            PointClass::Boundary => Self::boundary(polygon, apex),
            PointClass::Exterior => Self::exterior(polygon, apex),
        }
    }

    fn interior(polygon: &ConvexPolygon<T>, apex: Point<T>) -> Self {
        let m = polygon.len();
        let mut pts: Vec<Point<T>> = (0..=m).map(|k| polygon.vertex(k) - apex).collect();
        // Close the loop on the identical vector so the last sweep is 2pi.
        pts[m] = pts[0];
        let mut chain = Chain::new(pts, T::zero(), T::zero());
        chain.sweep[m] = T::TAU();
        let start_dir = chain.pts[0] * chain.pts[0].norm().recip();
        let mut table = Self::assemble(apex, ApexKind::Interior, chain, None, start_dir, start_dir);
        table.sweep_total = T::TAU();
        table
    }

    fn boundary(polygon: &ConvexPolygon<T>, apex: Point<T>) -> Self {
        let m = polygon.len();
        let band = polygon.boundary_band();
        let on_vertex = (0..m).find(|&k| polygon.vertex(k).distance(apex) <= band);
        let (first, count, vertex) = match on_vertex {
            // v_{k+1} .. v_{k-1}
            Some(k) => (k + 1, m - 1, Some(k)),
            None => {
                let e = (0..m)
                    .min_by(|&i, &j| {
                        let di = polygon.edge_signed_distance(i, apex).abs();
                        let dj = polygon.edge_signed_distance(j, apex).abs();
                        di.partial_cmp(&dj).unwrap()
                    })
                    .unwrap();
                // v_{e+1} .. v_e
                (e + 1, m, None)
            }
        };
        let pts: Vec<Point<T>> = (0..count).map(|k| polygon.vertex(first + k) - apex).collect();
        let lead = pts[0].norm();
        let tail = pts[count - 1].norm();
        let chain = Chain::new(pts, lead, tail);
        let start_dir = chain.pts[0] * lead.recip();
        let end_dir = chain.pts[count - 1] * tail.recip();
        let mut table = Self::assemble(
            apex,
            ApexKind::Boundary { vertex },
            chain,
            None,
            start_dir,
            end_dir,
        );
        table.tangent_edges = [Some(lead), Some(tail)];
        table
    }

    fn exterior(polygon: &ConvexPolygon<T>, apex: Point<T>) -> Self {
        let m = polygon.len();
        let rel: Vec<Point<T>> = polygon.vertices().iter().map(|&v| v - apex).collect();
        let reference = polygon.centroid() - apex;
        let phi: Vec<T> = rel.iter().map(|&w| reference.angle_to(w)).collect();
        let mut i_min = 0;
        let mut i_max = 0;
        for k in 1..m {
            if phi[k] < phi[i_min] {
                i_min = k;
            }
            if phi[k] > phi[i_max] {
                i_max = k;
            }
        }
        // Far chain runs CCW along the polygon from i_min to i_max, the near
        // chain CW; both sweep CCW around the apex.
        let mut far = vec![rel[i_min]];
        let mut k = i_min;
        while k != i_max {
            k = (k + 1) % m;
            far.push(rel[k]);
        }
        let mut near = vec![rel[i_min]];
        let mut k = i_min;
        while k != i_max {
            k = (k + m - 1) % m;
            near.push(rel[k]);
        }
        let far = Chain::new(far, T::zero(), T::zero());
        let mut near = Chain::new(near, T::zero(), T::zero());
        // Both chains end on the same vertex.
        let w = *far.sweep.last().unwrap();
        let nl = near.sweep.len();
        near.sweep[nl - 1] = w;
        for s in near.sweep.iter_mut() {
            if *s > w {
                *s = w;
            }
        }
        let start_dir = rel[i_min] * rel[i_min].norm().recip();
        let end_dir = rel[i_max] * rel[i_max].norm().recip();
        let band = polygon.boundary_band();
        let tangent_edge = |v: usize| -> Option<T> {
            let w = rel[v];
            let dir = w * w.norm().recip();
            [(v + 1) % m, (v + m - 1) % m].into_iter().find_map(|nb| {
                let off = dir.cross(rel[nb]).abs();
                (off <= band).then(|| rel[nb].distance(w))
            })
        };
        let edges = [tangent_edge(i_min), tangent_edge(i_max)];
        let mut table = Self::assemble(apex, ApexKind::Exterior, far, Some(near), start_dir, end_dir);
        table.tangent_edges = edges;
        table
    }

    fn assemble(
        apex: Point<T>,
        kind: ApexKind,
        far: Chain<T>,
        near: Option<Chain<T>>,
        start_dir: Point<T>,
        end_dir: Point<T>,
    ) -> Self {
        // Sector boundaries: every chain vertex, tagged with the chain vertex
        // that defines it so hits there are exact.
        #[derive(Clone, Copy)]
        struct Cut<T> {
            sweep: T,
            dir: Point<T>,
            far_vertex: Option<usize>,
            near_vertex: Option<usize>,
        }
        let mut cuts: Vec<Cut<T>> = far
            .pts
            .iter()
            .enumerate()
            .map(|(i, &p)| Cut {
                sweep: far.sweep[i],
                dir: p,
                far_vertex: Some(i),
                near_vertex: None,
            })
            .collect();
        if let Some(near) = &near {
            cuts.extend(near.pts.iter().enumerate().map(|(i, &p)| Cut {
                sweep: near.sweep[i],
                dir: p,
                far_vertex: None,
                near_vertex: Some(i),
            }));
        }
        cuts.sort_by(|a, b| a.sweep.partial_cmp(&b.sweep).unwrap());

        let sweep_total = *far.sweep.last().unwrap();
        let mut sectors = Vec::with_capacity(cuts.len());
        let mut area0 = T::zero();
        let mut fc = 0usize;
        let mut nc = 0usize;
        // Vertices collinear with the apex give cuts that differ by rounding
        // only; a sliver sector between them would have a zero chord.
        let sliver = T::lit(T::ANGLE_EPS * 1e-3);
        for w in cuts.windows(2) {
            let (c0, c1) = (w[0], w[1]);
            if c1.sweep <= c0.sweep + sliver {
                continue;
            }
            let ef = far.edge_for(&mut fc, c1.sweep);
            let (far_a, far_arc0) = far.hit(ef, c0.dir, c0.far_vertex);
            let (far_b, _) = far.hit(ef, c1.dir, c1.far_vertex);
            let (near_a, near_b, near_arc0, has_near) = match &near {
                Some(near) => {
                    let en = near.edge_for(&mut nc, c1.sweep);
                    let (na, arc) = near.hit(en, c0.dir, c0.near_vertex);
                    let (nb, _) = near.hit(en, c1.dir, c1.near_vertex);
                    (na, nb, arc, true)
                }
                None => (Point::zero(), Point::zero(), T::zero(), false),
            };
            let area = (far_a.cross(far_b) - near_a.cross(near_b)) * T::half();
            let area = area.max(T::zero());
            sectors.push(Sector {
                sweep0: c0.sweep,
                sweep1: c1.sweep,
                far_a,
                far_b,
                near_a,
                near_b,
                area0,
                area,
                far_arc0,
                near_arc0,
                has_near,
            });
            area0 = area0 + area;
        }
        let near_total = near.as_ref().map_or(T::zero(), |c| c.total);
        Self {
            apex,
            kind,
            start_angle: start_dir.angle(),
            sweep_total,
            area_total: area0,
            far_total: far.total,
            near_total,
            sectors,
            start_dir,
            end_dir,
            tangent_edges: [None, None],
        }
    }

    #[inline]
    pub fn apex(&self) -> Point<T> {
        self.apex
    }

    #[inline]
    pub fn kind(&self) -> ApexKind {
        self.kind
    }

    /// Set when the apex coincides with polygon vertex `k`; the tangent rays
    /// then graze that vertex.
    pub fn on_vertex(&self) -> Option<usize> {
        match self.kind {
            ApexKind::Boundary { vertex } => vertex,
            _ => None,
        }
    }

    #[inline]
    pub fn is_interior(&self) -> bool {
        self.kind == ApexKind::Interior
    }

    #[inline]
    pub fn sectors(&self) -> &[Sector<T>] {
        &self.sectors
    }

    /// Absolute angle of the sweep's start direction.
    #[inline]
    pub fn start_angle(&self) -> T {
        self.start_angle
    }

    #[inline]
    pub fn start_direction(&self) -> Point<T> {
        self.start_dir
    }

    #[inline]
    pub fn end_direction(&self) -> Point<T> {
        self.end_dir
    }

    /// Angular width of the sweep (`2pi` for an interior apex).
    #[inline]
    pub fn sweep_width(&self) -> T {
        self.sweep_total
    }

    /// Area swept over the full sweep; equals the polygon area.
    #[inline]
    pub fn total_area(&self) -> T {
        self.area_total
    }

    /// Length of the boundary chain facing away from the apex (the whole
    /// perimeter for an interior apex).
    #[inline]
    pub fn far_length(&self) -> T {
        self.far_total
    }

    #[inline]
    pub fn near_length(&self) -> T {
        self.near_total
    }

    /// Lengths of polygon edges lying on the two tangent lines through the
    /// apex (start side, end side). `None` means the tangent only touches a
    /// vertex. Always `None` for an interior apex.
    pub fn tangent_edges(&self) -> [Option<T>; 2] {
        self.tangent_edges
    }

    /// Absolute angles of the sector boundaries in sweep order.
    pub fn vertex_angles(&self) -> Vec<T> {
        let mut out: Vec<T> = self
            .sectors
            .iter()
            .map(|s| normalize_angle(self.start_angle + s.sweep0))
            .collect();
        if let Some(last) = self.sectors.last() {
            out.push(normalize_angle(self.start_angle + last.sweep1));
        }
        out
    }

    /// Cumulative area at each sector boundary; starts at 0, ends at the
    /// polygon area.
    pub fn cumulative_areas(&self) -> Vec<T> {
        let mut out: Vec<T> = self.sectors.iter().map(|s| s.area0).collect();
        out.push(self.area_total);
        out
    }

    /// Boundary length swept inside each sector (far plus near chain).
    pub fn boundary_arclengths(&self) -> Vec<T> {
        self.sectors
            .iter()
            .map(|s| s.far_a.distance(s.far_b) + s.near_a.distance(s.near_b))
            .collect()
    }

    /// Sweep offset of an absolute angle (mod `2pi` for an interior apex).
    pub fn sweep_of_angle(&self, angle: T) -> T {
        normalize_angle(angle - self.start_angle)
    }

    fn sector_by_area(&self, a: T) -> usize {
        let idx = self.sectors.partition_point(|s| s.area0 + s.area <= a);
        idx.min(self.sectors.len() - 1)
    }

    fn sector_by_sweep(&self, phi: T) -> usize {
        let idx = self.sectors.partition_point(|s| s.sweep1 <= phi);
        idx.min(self.sectors.len() - 1)
    }

    /// Ray whose swept area from the start direction equals `a`.
    pub fn hit_at_area(&self, a: T) -> RayHit<T> {
        let a = a.max(T::zero()).min(self.area_total);
        let k = self.sector_by_area(a);
        let sec = &self.sectors[k];
        let s = sec.solve(a - sec.area0);
        self.hit_in_sector(k, s)
    }

    /// Ray at sweep offset `phi` from the start direction.
    pub fn hit_at_sweep(&self, phi: T) -> RayHit<T> {
        let phi = phi.max(T::zero()).min(self.sweep_total);
        let k = self.sector_by_sweep(phi);
        let sec = &self.sectors[k];
        let dir = Point::from_angle(self.start_angle + phi);
        let df = sec.far_b - sec.far_a;
        let den = dir.cross(df);
        let s = if den.abs() > T::zero() {
            (sec.far_a.cross(dir) / den).max(T::zero()).min(T::one())
        } else {
            T::zero()
        };
        self.hit_in_sector(k, s)
    }

    /// Ray through the point at parameter `s` of sector `k`'s far segment.
    pub fn hit_in_sector(&self, k: usize, s: T) -> RayHit<T> {
        let sec = &self.sectors[k];
        let far = sec.far_a.lerp(sec.far_b, s);
        let r = sec.near_param(s);
        let near = sec.near_a.lerp(sec.near_b, r);
        let sweep = (sec.sweep0 + sec.far_a.angle_to(far)).max(sec.sweep0).min(sec.sweep1);
        RayHit {
            sweep,
            angle: far.angle(),
            sector: k,
            s,
            far,
            near,
            area: sec.area0 + sec.area_at(s),
            far_arc: sec.far_arc0 + far.distance(sec.far_a),
            near_arc: sec.near_arc0 + near.distance(sec.near_a),
        }
    }
}

impl<T: Scalar> Sector<T> {
    /// Near-edge parameter of the ray through the far point at `s`.
    fn near_param(&self, s: T) -> T {
        if !self.has_near {
            return T::zero();
        }
        let df = self.far_b - self.far_a;
        let dn = self.near_b - self.near_a;
        let den = dn.cross(self.far_a + df * s);
        let scale = dn.norm() * (self.far_a.norm() + df.norm());
        if den.abs() <= T::epsilon() * scale {
            return s;
        }
        let num = self.near_a.cross(self.far_a) + s * self.near_a.cross(df);
        (-num / den).max(T::zero()).min(T::one())
    }

    /// Area swept from `sweep0` to the ray through the far point at `s`.
    fn area_at(&self, s: T) -> T {
        let kf = self.far_a.cross(self.far_b);
        if !self.has_near {
            return (kf * s * T::half()).max(T::zero());
        }
        let kn = self.near_a.cross(self.near_b);
        ((kf * s - kn * self.near_param(s)) * T::half()).max(T::zero())
    }

    /// Far parameter `s` at which the swept area equals `q`.
    fn solve(&self, q: T) -> T {
        if self.area <= T::zero() {
            return T::zero();
        }
        if q >= self.area {
            return T::one();
        }
        let two = T::two();
        let kf = self.far_a.cross(self.far_b);
        if !self.has_near {
            return (two * q / kf).max(T::zero()).min(T::one());
        }
        let kn = self.near_a.cross(self.near_b);
        let df = self.far_b - self.far_a;
        let dn = self.near_b - self.near_a;
        let c0 = self.near_a.cross(self.far_a);
        let c1 = self.near_a.cross(df);
        let c2 = dn.cross(self.far_a);
        let c3 = dn.cross(df);
        let qa = kf * c3;
        let qb = kf * c2 - two * q * c3 + kn * c1;
        let qc = kn * c0 - two * q * c2;
        let tol = T::lit(1e-12) * self.area.max(T::min_positive_value());
        if let Some(s) = quadratic_root_in_unit(qa, qb, qc) {
            if (self.area_at(s) - q).abs() <= tol {
                return s;
            }
        }
        // Area is monotone in s, so bisection always converges.
        let (mut lo, mut hi) = (T::zero(), T::one());
        for _ in 0..200 {
            let mid = (lo + hi) * T::half();
            if self.area_at(mid) < q {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= T::epsilon() {
                break;
            }
        }
        (lo + hi) * T::half()
    }
}

/// Root of `a s^2 + b s + c` in `[0, 1]` (with a little slack), computed with
/// the cancellation-free form.
fn quadratic_root_in_unit<T: Scalar>(a: T, b: T, c: T) -> Option<T> {
    let slack = T::lit(1e-9);
    let in_range = |s: T| s >= -slack && s <= T::one() + slack;
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == T::zero() {
        return None;
    }
    if a.abs() <= T::lit(1e-14) * scale {
        if b == T::zero() {
            return None;
        }
        let s = -c / b;
        return in_range(s).then(|| s.max(T::zero()).min(T::one()));
    }
    let disc = b * b - T::lit(4.0) * a * c;
    if disc < T::zero() {
        return None;
    }
    let sq = disc.sqrt();
    let qv = -(b + b.signum() * sq) * T::half();
    let mut roots = [T::nan(), T::nan()];
    if qv != T::zero() {
        roots[0] = qv / a;
        roots[1] = c / qv;
    } else {
        roots[0] = T::zero();
    }
    roots
        .into_iter()
        .filter(|s| s.is_finite() && in_range(*s))
        .min_by(|x, y| {
            let dx = (*x - T::half()).abs();
            let dy = (*y - T::half()).abs();
            dx.partial_cmp(&dy).unwrap()
        })
        .map(|s| s.max(T::zero()).min(T::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::signed_area;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn square() -> ConvexPolygon<f64> {
        ConvexPolygon::from_coords(&[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]).unwrap()
    }

    fn hexagon() -> ConvexPolygon<f64> {
        ConvexPolygon::from_coords(&[
            (0.0, 0.0),
            (10.0, 0.0),
            (11.0, 7.0),
            (1.0, 12.0),
            (-4.0, 10.0),
            (-4.0, 4.0),
        ])
        .unwrap()
    }

    #[test]
    fn square_center_has_four_equal_sectors() {
        let t = SectorTable::new(&square(), Point::new(0.5, 0.5));
        assert!(t.is_interior());
        assert_eq!(t.sectors().len(), 4);
        let cum = t.cumulative_areas();
        for (k, c) in cum.iter().enumerate() {
            assert!((c - 0.25 * k as f64).abs() < 1e-15);
        }
        assert!((t.far_length() - 4.0).abs() < 1e-15);
        assert!((t.start_angle() - 1.25 * PI).abs() < 1e-15);
    }

    #[test]
    fn square_far_below_sweeps_whole_area() {
        let t = SectorTable::new(&square(), Point::new(0.5, -10.0));
        assert_eq!(t.kind(), ApexKind::Exterior);
        let expected = 2.0 * (0.5f64 / 10.0).atan();
        assert!((t.sweep_width() - expected).abs() < 1e-14);
        assert!((t.total_area() - 1.0).abs() < 1e-13);
        assert!((t.far_length() - 3.0).abs() < 1e-13);
        assert!((t.near_length() - 1.0).abs() < 1e-13);
        assert_eq!(t.tangent_edges(), [None, None]);
    }

    #[test]
    fn hexagon_interior_apex_area() {
        let h = hexagon();
        let t = SectorTable::new(&h, Point::new(2.3, 5.7));
        assert!((t.total_area() - 138.5).abs() < 1e-12);
        let cum = t.cumulative_areas();
        assert!(cum.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn hit_at_area_inverts_exactly() {
        let h = hexagon();
        for apex in [Point::new(2.3, 5.7), Point::new(20.0, -3.0), Point::new(5.0, 0.0)] {
            let t = SectorTable::new(&h, apex);
            for k in 1..20 {
                let a = t.total_area() * k as f64 / 20.0;
                let hit = t.hit_at_area(a);
                assert!((hit.area - a).abs() < 1e-10, "{apex:?} {a} {}", hit.area);
                // Independent check: clip the hexagon by the ray's half-plane.
                let dir = Point::from_angle(hit.angle);
                let start = t.start_direction();
                let mut piece = crate::geometry::clip_halfplane(h.vertices(), apex, -dir.perp(), 0.0);
                if !t.is_interior() {
                    piece = crate::geometry::clip_halfplane(&piece, apex, start.perp(), 0.0);
                    assert!((signed_area(&piece) - a).abs() < 1e-9, "{apex:?}");
                }
            }
        }
    }

    #[test]
    fn hit_at_sweep_roundtrips_area() {
        let t = SectorTable::new(&hexagon(), Point::new(15.0, 15.0));
        for k in 1..50 {
            let phi = t.sweep_width() * k as f64 / 50.0;
            let hit = t.hit_at_sweep(phi);
            assert!((hit.sweep - phi).abs() < 1e-12);
            let back = t.hit_at_area(hit.area);
            assert!((back.sweep - phi).abs() < 1e-9);
        }
    }

    #[test]
    fn boundary_apex_on_edge_and_vertex() {
        let sq = square();
        let t = SectorTable::new(&sq, Point::new(0.5, 0.0));
        assert_eq!(t.kind(), ApexKind::Boundary { vertex: None });
        assert!((t.sweep_width() - PI).abs() < 1e-15);
        assert!((t.total_area() - 1.0).abs() < 1e-15);
        assert!((t.far_length() - 4.0).abs() < 1e-15);
        let t = SectorTable::new(&sq, Point::new(0.0, 0.0));
        assert_eq!(t.on_vertex(), Some(0));
        assert!((t.sweep_width() - FRAC_PI_2).abs() < 1e-15);
        assert!((t.start_angle() - 0.0).abs() < 1e-15);
        assert_eq!(t.sectors().len(), 2);
        assert!((t.hit_at_area(0.5).angle - FRAC_PI_4).abs() < 1e-15);
    }

    #[test]
    fn exterior_apex_on_edge_line_detects_tangent_edge() {
        let sq = square();
        let t = SectorTable::new(&sq, Point::new(2.0, 0.0));
        let edges = t.tangent_edges();
        assert!(edges.iter().any(|e| matches!(e, Some(l) if (l - 1.0).abs() < 1e-12)));
        assert!(edges.iter().any(|e| e.is_none()));
        assert!((t.total_area() - 1.0).abs() < 1e-14);
        let t = SectorTable::new(&sq, Point::new(2.0, 2.0));
        assert_eq!(t.tangent_edges(), [None, None]);
    }

    #[test]
    fn quadratic_root_helper() {
        // (s - 0.25)(s - 3)
        let r = quadratic_root_in_unit::<f64>(1.0, -3.25, 0.75).unwrap();
        assert!((r - 0.25).abs() < 1e-15);
        assert!(quadratic_root_in_unit::<f64>(1.0, 0.0, 1.0).is_none());
        let r = quadratic_root_in_unit::<f64>(0.0, 2.0, -1.0).unwrap();
        assert!((r - 0.5).abs() < 1e-15);
    }
}
