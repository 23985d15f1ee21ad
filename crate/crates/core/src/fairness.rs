//! Fairness of fan partitions and the fairness function over the plane.
//!
//! `F(P, n)` is the smallest max/min perimeter ratio over the equal-area convex
//! `n`-fans with origin `P`. Outside the polygon (and on its boundary) the fan
//! is unique. Inside, the fan has one free rotation; it is parametrized here by
//! the area `a` swept from the sweep's start direction to the first ray. Since
//! advancing `a` by `area / n` maps the fan onto itself with the pieces
//! relabelled, only `a` in `[0, area / n)` needs searching.
//!
//! Within that period, the perimeters are smooth between *events*, values of
//! `a` at which some ray crosses a polygon vertex. Exact mode evaluates every
//! event, subdivides each event interval and refines every local minimum by
//! golden section; sampled mode polls a uniform grid and refines the best.

use std::cmp::Ordering;
use std::fmt;

use thiserror::Error;

use crate::geometry::{
    boundary_distance_extremes, classify_point, ConvexPolygon, Point, PointClass, RayHit,
    SectorTable,
};
use crate::optimize::golden_section;
use crate::partition::{
    angle_eps, closed_hits, closed_perimeters, open_hits, open_perimeters, Fan, FanOrigin,
    FanPartition, Fractions,
};
use crate::scalar::{normalize_angle, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FairnessError {
    #[error("partition has no pieces")]
    EmptyPartition,
    #[error("point is not strictly inside the polygon")]
    PointNotInterior,
}

/// A fairness ratio: at least 1 when finite, or `+inf`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FairnessValue<T>(T);

impl<T: Scalar> FairnessValue<T> {
    pub fn new(value: T) -> Self {
        if value.is_nan() {
            Self(T::infinity())
        } else {
            Self(value)
        }
    }

    pub fn one() -> Self {
        Self(T::one())
    }

    pub fn infinite() -> Self {
        Self(T::infinity())
    }

    #[inline]
    pub fn get(self) -> T {
        self.0
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }
}

impl<T: Scalar> Eq for FairnessValue<T> {}

impl<T: Scalar> PartialOrd for FairnessValue<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for FairnessValue<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.partial_cmp(&other.0).unwrap_or(Ordering::Equal)
    }
}

impl<T: Scalar> fmt::Display for FairnessValue<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_infinite() {
            f.write_str("inf")
        } else {
            fmt::Display::fmt(&self.0, f)
        }
    }
}

/// How the free rotation of an interior fan is optimized.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaMode {
    /// Every event plus subdivided event intervals, golden-refined.
    Exact,
    /// `K` uniform samples over one period, best one golden-refined.
    Sampled(usize),
}

impl Default for ThetaMode {
    fn default() -> Self {
        ThetaMode::Sampled(32)
    }
}

/// Max over min of a perimeter list.
pub fn ratio_of<T: Scalar>(perimeters: &[T]) -> T {
    let mut lo = T::infinity();
    let mut hi = T::zero();
    for &p in perimeters {
        lo = lo.min(p);
        hi = hi.max(p);
    }
    if lo > T::zero() {
        hi / lo
    } else {
        T::infinity()
    }
}

pub fn fairness_ratio<T: Scalar>(partition: &FanPartition<T>) -> Result<FairnessValue<T>, FairnessError> {
    if partition.pieces.is_empty() {
        return Err(FairnessError::EmptyPartition);
    }
    Ok(FairnessValue::new(ratio_of(&partition.perimeters())))
}

/// `|p_A / p_B - sqrt(a_A / a_B)|` for the smallest-area piece `A` and the
/// largest-area piece `B` (chosen by target fraction, first on ties). With
/// equal targets it is `1 - 1 / fairness`.
pub fn area_weighted_deviation<T: Scalar>(partition: &FanPartition<T>) -> Result<T, FairnessError> {
    let pieces = &partition.pieces;
    if pieces.is_empty() {
        return Err(FairnessError::EmptyPartition);
    }
    let targets = &partition.target_fractions;
    let uniform = targets.iter().all(|&f| (f - targets[0]).abs() <= T::lit(1e-12));
    if uniform || targets.len() != pieces.len() {
        let r = ratio_of(&partition.perimeters());
        return Ok((T::one() - r.recip()).abs());
    }
    let mut imin = 0;
    let mut imax = 0;
    for (i, &f) in targets.iter().enumerate() {
        if f < targets[imin] {
            imin = i;
        }
        if f > targets[imax] {
            imax = i;
        }
    }
    let (a, b) = (&pieces[imin], &pieces[imax]);
    Ok((a.perimeter / b.perimeter - (a.area / b.area).sqrt()).abs())
}

/// One polled rotation of an interior fan.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaSample<T> {
    /// Direction of the first ray.
    pub theta: T,
    pub value: FairnessValue<T>,
    pub feasible: bool,
}

/// The fairness of an interior point as a function of the fan rotation.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaProfile<T> {
    pub origin: Point<T>,
    pub n: usize,
    pub samples: Vec<ThetaSample<T>>,
    /// First-ray directions at which some ray passes through a vertex.
    pub events: Vec<T>,
    pub best_theta: T,
    pub best_value: FairnessValue<T>,
}

/// `F(P, n)` together with the fan attaining it.
#[derive(Clone, Debug, PartialEq)]
pub struct PointFairness<T> {
    pub value: FairnessValue<T>,
    /// `None` when no feasible fan exists.
    pub fan: Option<Fan<T>>,
}

struct Probe<T> {
    value: T,
    /// Signed convexity slack: feasible iff `<= 0`. For `n = 2` this is the
    /// first gap minus `pi`, which changes sign exactly at the straight cuts.
    slack: T,
}

/// Evaluates rotations of an interior fan, reusing buffers.
struct ClosedEval<'a, T: Scalar> {
    table: &'a SectorTable<T>,
    fractions: Fractions<T>,
    n: usize,
    period: T,
    hits: Vec<RayHit<T>>,
    perims: Vec<T>,
}

impl<'a, T: Scalar> ClosedEval<'a, T> {
    fn new(table: &'a SectorTable<T>, n: usize) -> Self {
        Self {
            table,
            fractions: Fractions::equal(n).expect("n >= 1"),
            n,
            period: table.total_area() / T::lit(n as f64),
            hits: Vec::with_capacity(n),
            perims: Vec::with_capacity(n),
        }
    }

    fn wrap(&self, a: T) -> T {
        let total = self.table.total_area();
        let mut a = a % total;
        if a < T::zero() {
            a = a + total;
        }
        a
    }

    fn probe(&mut self, a: T) -> Probe<T> {
        let a = self.wrap(a);
        closed_hits(self.table, a, &self.fractions, &mut self.hits);
        let widest = closed_perimeters(self.table, &self.hits, &mut self.perims);
        let slack = if self.n == 2 {
            let mut g = self.hits[1].sweep - self.hits[0].sweep;
            if g <= T::zero() {
                g = g + T::TAU();
            }
            g - T::PI()
        } else {
            widest - T::PI() - angle_eps()
        };
        let feasible = if self.n == 2 {
            slack.abs() <= angle_eps()
        } else {
            slack <= T::zero()
        };
        let value = if feasible {
            ratio_of(&self.perims)
        } else {
            T::infinity()
        };
        Probe { value, slack }
    }

    fn value(&mut self, a: T) -> T {
        self.probe(a).value
    }

    /// Smallest first-ray angle among the rotations of the fan at `a`, and the
    /// fan written starting from that ray.
    fn witness(&mut self, a: T) -> (T, Vec<T>) {
        let a = self.wrap(a);
        closed_hits(self.table, a, &self.fractions, &mut self.hits);
        let angles: Vec<T> = self.hits.iter().map(|h| normalize_angle(h.angle)).collect();
        let start = (0..angles.len())
            .min_by(|&i, &j| angles[i].partial_cmp(&angles[j]).unwrap())
            .unwrap();
        let rays: Vec<T> = (0..angles.len()).map(|k| angles[(start + k) % angles.len()]).collect();
        (rays[0], rays)
    }

    fn event_offsets(&self) -> Vec<T> {
        let mut ev: Vec<T> = self
            .table
            .cumulative_areas()
            .into_iter()
            .map(|c| {
                let r = c % self.period;
                if self.period - r <= T::lit(1e-14) * self.period {
                    T::zero()
                } else {
                    r
                }
            })
            .collect();
        ev.push(T::zero());
        ev.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ev.dedup_by(|a, b| (*a - *b).abs() <= T::lit(1e-14) * self.period);
        ev
    }

    /// Bisects the feasibility boundary between `a` (slack `sa`) and `b`;
    /// returns a point on the feasible side.
    fn boundary(&mut self, mut a: T, mut sa: T, mut b: T) -> T {
        let n2 = self.n == 2;
        for _ in 0..80 {
            let mid = (a + b) * T::half();
            if mid == a || mid == b {
                break;
            }
            let sm = self.probe(mid).slack;
            let same = if n2 {
                (sm > T::zero()) == (sa > T::zero())
            } else {
                (sm <= T::zero()) == (sa <= T::zero())
            };
            if same {
                a = mid;
                sa = sm;
            } else {
                b = mid;
            }
        }
        if n2 {
            // Pick whichever end has the smaller gap error.
            let sb = self.probe(b).slack;
            if sb.abs() < sa.abs() {
                b
            } else {
                a
            }
        } else if sa <= T::zero() {
            a
        } else {
            b
        }
    }

    fn optimize(&mut self, mode: ThetaMode, record: Option<&mut Vec<ThetaSample<T>>>) -> Option<(T, T)> {
        let period = self.period;
        let grid: Vec<T> = match mode {
            ThetaMode::Exact => {
                let ev = self.event_offsets();
                let mut g = Vec::with_capacity(ev.len() * 8 + 1);
                for (i, &e0) in ev.iter().enumerate() {
                    let e1 = ev.get(i + 1).copied().unwrap_or(period);
                    for k in 0..8 {
                        g.push(e0 + (e1 - e0) * T::lit(k as f64 / 8.0));
                    }
                }
                g
            }
            ThetaMode::Sampled(k) => {
                let k = k.max(1);
                (0..k).map(|i| period * T::lit(i as f64) / T::lit(k as f64)).collect()
            }
        };
        if let Some(rec) = record {
            for &a in &grid {
                let value = self.value(a);
                rec.push(ThetaSample {
                    theta: self.hits_theta(a),
                    value: FairnessValue::new(value),
                    feasible: value.is_finite(),
                });
            }
        }
        // The rotation whose lowest ray points along +x, so that ties can
        // resolve to theta = 0.
        let zero = self.table.hit_at_sweep(self.table.sweep_of_angle(T::zero())).area % period;
        let mut grid = grid;
        grid.push(zero);
        grid.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let len = grid.len();
        let probes: Vec<Probe<T>> = grid.iter().map(|&a| self.probe(a)).collect();

        let mut cands: Vec<(T, T)> = Vec::new();
        let next_a = |i: usize| if i + 1 < len { grid[i + 1] } else { period + grid[0] };
        let prev_a = |i: usize| if i > 0 { grid[i - 1] } else { grid[len - 1] - period };

        // Feasibility boundaries between consecutive polls.
        for i in 0..len {
            let j = (i + 1) % len;
            let (si, sj) = (probes[i].slack, probes[j].slack);
            let crosses = if self.n == 2 {
                (si > T::zero()) != (sj > T::zero())
            } else {
                (si <= T::zero()) != (sj <= T::zero())
            };
            if crosses {
                let a = self.boundary(grid[i], si, next_a(i));
                let v = self.value(a);
                if v.is_finite() {
                    cands.push((self.wrap(a), v));
                }
            }
        }

        for (&a, pr) in grid.iter().zip(&probes) {
            if pr.value.is_finite() {
                cands.push((a, pr.value));
            }
        }
        if self.n != 2 {
            let tol = T::lit(1e-12) * period;
            let local: Vec<usize> = match mode {
                ThetaMode::Exact => (0..len)
                    .filter(|&i| {
                        let v = probes[i].value;
                        v.is_finite()
                            && v <= probes[(i + len - 1) % len].value
                            && v <= probes[(i + 1) % len].value
                    })
                    .collect(),
                ThetaMode::Sampled(_) => (0..len)
                    .filter(|&i| probes[i].value.is_finite())
                    .min_by(|&i, &j| probes[i].value.partial_cmp(&probes[j].value).unwrap())
                    .into_iter()
                    .collect(),
            };
            for i in local {
                let (lo, hi) = (prev_a(i), next_a(i));
                let r = golden_section(|a| self.value(a), lo, hi, tol, 200);
                if r.value.is_finite() {
                    cands.push((self.wrap(r.x), r.value));
                }
            }
        }

        // Lowest value; near-ties go to the smallest first-ray angle.
        let best = cands
            .iter()
            .copied()
            .min_by(|x, y| x.1.partial_cmp(&y.1).unwrap())?;
        let tie = best.1 * T::lit(1e-10);
        let mut winner = best;
        let mut winner_theta = self.witness(best.0).0;
        for &(a, v) in &cands {
            if v - best.1 <= tie {
                let th = self.witness(a).0;
                if th < winner_theta {
                    winner = (a, v);
                    winner_theta = th;
                }
            }
        }
        Some(winner)
    }

    fn hits_theta(&mut self, a: T) -> T {
        let a = self.wrap(a);
        self.table.hit_at_area(a).angle
    }
}

/// `F(P, n)` and a fan attaining it.
pub fn fairness_at_point<T: Scalar>(
    polygon: &ConvexPolygon<T>,
    p: Point<T>,
    n: usize,
    mode: ThetaMode,
) -> PointFairness<T> {
    if n == 0 || !p.is_finite() {
        return PointFairness {
            value: FairnessValue::infinite(),
            fan: None,
        };
    }
    let class = classify_point(polygon, p);
    if n == 1 {
        return PointFairness {
            value: FairnessValue::one(),
            fan: Some(Fan {
                origin: FanOrigin::Finite(p),
                rays: Vec::new(),
                closed: class == PointClass::Interior,
            }),
        };
    }
    let table = SectorTable::new(polygon, p);
    if class != PointClass::Interior {
        let fr = Fractions::equal(n).expect("n >= 1");
        let hits = open_hits(&table, &fr);
        let mut perims = Vec::with_capacity(n);
        open_perimeters(&table, &hits, &mut perims);
        return PointFairness {
            value: FairnessValue::new(ratio_of(&perims)),
            fan: Some(Fan {
                origin: FanOrigin::Finite(p),
                rays: hits.iter().map(|h| h.angle).collect(),
                closed: false,
            }),
        };
    }
    let mut ev = ClosedEval::new(&table, n);
    // Sparse sampling can miss a narrow feasible range entirely; the event
    // grid cannot.
    let found = match ev.optimize(mode, None) {
        None if mode != ThetaMode::Exact => ev.optimize(ThetaMode::Exact, None),
        found => found,
    };
    match found {
        Some((a, v)) => {
            let (_, rays) = ev.witness(a);
            PointFairness {
                value: FairnessValue::new(v),
                fan: Some(Fan {
                    origin: FanOrigin::Finite(p),
                    rays,
                    closed: true,
                }),
            }
        }
        None => PointFairness {
            value: FairnessValue::infinite(),
            fan: None,
        },
    }
}

/// Just the value of [`fairness_at_point`].
pub fn fairness_value<T: Scalar>(polygon: &ConvexPolygon<T>, p: Point<T>, n: usize, mode: ThetaMode) -> FairnessValue<T> {
    fairness_at_point(polygon, p, n, mode).value
}

/// First-ray directions in `[0, 2pi)` at which some ray of the equal-area fan
/// from interior point `p` passes through a vertex, sorted.
pub fn theta_events<T: Scalar>(
    polygon: &ConvexPolygon<T>,
    p: Point<T>,
    n: usize,
) -> Result<Vec<T>, FairnessError> {
    if classify_point(polygon, p) != PointClass::Interior {
        return Err(FairnessError::PointNotInterior);
    }
    let table = SectorTable::new(polygon, p);
    let total = table.total_area();
    let n = n.max(1);
    let step = total / T::lit(n as f64);
    let cum = table.cumulative_areas();
    let mut out = Vec::with_capacity(n * cum.len());
    for &c in &cum[..cum.len() - 1] {
        for j in 0..n {
            let mut a = (c - step * T::lit(j as f64)) % total;
            if a < T::zero() {
                a = a + total;
            }
            out.push(normalize_angle(table.hit_at_area(a).angle));
        }
    }
    out.sort_by(|a, b| a.partial_cmp(b).unwrap());
    out.dedup_by(|a, b| (*a - *b).abs() <= T::lit(1e-12));
    if out.len() > 1 && (T::TAU() - out[out.len() - 1] + out[0]) <= T::lit(1e-12) {
        out.pop();
    }
    Ok(out)
}

/// The polled rotations and events of an interior point, with the optimum.
pub fn theta_profile<T: Scalar>(
    polygon: &ConvexPolygon<T>,
    p: Point<T>,
    n: usize,
    mode: ThetaMode,
) -> Result<ThetaProfile<T>, FairnessError> {
    let events = theta_events(polygon, p, n)?;
    let table = SectorTable::new(polygon, p);
    let n = n.max(1);
    let mut samples = Vec::new();
    let (best_theta, best_value) = if n == 1 {
        (T::zero(), FairnessValue::one())
    } else {
        let mut ev = ClosedEval::new(&table, n);
        let found = match ev.optimize(mode, Some(&mut samples)) {
            None if mode != ThetaMode::Exact => ev.optimize(ThetaMode::Exact, None),
            found => found,
        };
        match found {
            Some((a, v)) => (ev.witness(a).0, FairnessValue::new(v)),
            None => (T::zero(), FairnessValue::infinite()),
        }
    };
    Ok(ThetaProfile {
        origin: p,
        n,
        samples,
        events,
        best_theta,
        best_value,
    })
}

/// Limit of `F(P, n)` as `n` grows: the max/min ratio of the chords cut by
/// rays from `P` that meet the polygon. Inside, that is farthest over nearest
/// boundary distance. Outside, it is finite only when both tangent lines
/// through `P` carry an edge; a tangent through a lone vertex drives the
/// shortest chord to zero.
pub fn asymptotic_fairness<T: Scalar>(polygon: &ConvexPolygon<T>, p: Point<T>) -> FairnessValue<T> {
    if !p.is_finite() {
        return FairnessValue::infinite();
    }
    if classify_point(polygon, p) == PointClass::Interior {
        let (dmin, dmax) = boundary_distance_extremes(polygon, p).expect("interior point");
        return FairnessValue::new(if dmin > T::zero() { dmax / dmin } else { T::infinity() });
    }
    let table = SectorTable::new(polygon, p);
    let [e0, e1] = table.tangent_edges();
    let (Some(e0), Some(e1)) = (e0, e1) else {
        return FairnessValue::infinite();
    };
    let (lo, hi) = chord_extremes(&table);
    let lo = lo.min(e0).min(e1);
    let hi = hi.max(e0).max(e1);
    FairnessValue::new(if lo > T::zero() { hi / lo } else { T::infinity() })
}

/// Shortest and longest chord over the open sweep of an exterior or boundary
/// apex, sector by sector.
fn chord_extremes<T: Scalar>(table: &SectorTable<T>) -> (T, T) {
    let mut lo = T::infinity();
    let mut hi = T::zero();
    let tol = T::lit(1e-12);
    for k in 0..table.sectors().len() {
        let chord = |s: T| table.hit_in_sector(k, s).chord();
        for s in [T::zero(), T::one()] {
            let c = chord(s);
            lo = lo.min(c);
            hi = hi.max(c);
        }
        let mn = golden_section(chord, T::zero(), T::one(), tol, 120);
        let mx = golden_section(|s| -chord(s), T::zero(), T::one(), tol, 120);
        lo = lo.min(mn.value);
        hi = hi.max(-mx.value);
    }
    (lo, hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::chord_length;
    use crate::geometry::Ray;
    use crate::partition::{exterior_fan, interior_fan, parallel_fan};
    use crate::shapes;
    use std::f64::consts::{FRAC_PI_4, PI, SQRT_2};

    fn square() -> ConvexPolygon<f64> {
        shapes::unit_square::<f64>()
    }

    #[test]
    fn ratio_of_square_partitions() {
        let sq = square();
        let part = interior_fan(&sq, Point::new(0.5, 0.5), &Fractions::equal(4).unwrap(), 0.0)
            .unwrap()
            .feasible()
            .unwrap();
        assert_eq!(fairness_ratio(&part).unwrap().get(), 1.0);
        let strips = parallel_fan(&sq, PI / 2.0, &Fractions::equal(4).unwrap()).unwrap();
        assert!((fairness_ratio(&strips).unwrap().get() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn ratio_of_three_fan_at_right_angle() {
        // Center of the unit square, first ray straight up. Hand computation:
        // the other rays bound 1/3 each, so the upper-left piece has area 1/3
        // = 1/4 (left half of top) + triangle to the ray hitting the left
        // edge at height 0.5 - h with h/4 = 1/3 - 1/4, h = 1/3.
        let sq = square();
        let part = interior_fan(&sq, Point::new(0.5, 0.5), &Fractions::equal(3).unwrap(), PI / 2.0)
            .unwrap()
            .feasible()
            .unwrap();
        let h = 1.0 / 3.0;
        let r = (0.25f64 + h * h).sqrt();
        // Piece 1: ray up (0.5) + top-left half (0.5) + left from top to
        // 0.5 - h (0.5 + h) + ray r. Piece 3 is its mirror image. Piece 2:
        // two rays r + left below (0.5 - h) + bottom (1) + right below.
        let p1 = 0.5 + 0.5 + (0.5 + h) + r;
        let p2 = r + r + 2.0 * (0.5 - h) + 1.0;
        let want = p1.max(p2) / p1.min(p2);
        assert!((fairness_ratio(&part).unwrap().get() - want).abs() < 1e-12);
    }

    #[test]
    fn area_weighted_examples() {
        let sq = square();
        let half = parallel_fan(&sq, PI / 2.0, &Fractions::equal(2).unwrap()).unwrap();
        assert!(area_weighted_deviation(&half).unwrap() < 1e-10);
        let uneven = parallel_fan(&sq, PI / 2.0, &Fractions::new(vec![0.25, 0.75]).unwrap()).unwrap();
        let want = (2.5f64 / 3.5 - (1.0f64 / 3.0).sqrt()).abs();
        assert!((area_weighted_deviation(&uneven).unwrap() - want).abs() < 1e-10);
        let quad = interior_fan(&sq, Point::new(0.5, 0.5), &Fractions::equal(4).unwrap(), 0.0)
            .unwrap()
            .feasible()
            .unwrap();
        assert!(area_weighted_deviation(&quad).unwrap() < 1e-14);
        let empty = FanPartition::<f64> {
            fan: quad.fan.clone(),
            pieces: vec![],
            target_fractions: vec![],
        };
        assert_eq!(area_weighted_deviation(&empty), Err(FairnessError::EmptyPartition));
        assert_eq!(fairness_ratio(&empty), Err(FairnessError::EmptyPartition));
    }

    #[test]
    fn theta_events_square_center() {
        let sq = square();
        let want = [FRAC_PI_4, 3.0 * FRAC_PI_4, 5.0 * FRAC_PI_4, 7.0 * FRAC_PI_4];
        for n in [2, 4] {
            let ev = theta_events(&sq, Point::new(0.5, 0.5), n).unwrap();
            assert_eq!(ev.len(), 4, "n = {n}: {ev:?}");
            for (a, w) in ev.iter().zip(want) {
                assert!((a - w).abs() < 1e-12);
            }
        }
        assert_eq!(
            theta_events(&sq, Point::new(2.0, 0.5), 3),
            Err(FairnessError::PointNotInterior)
        );
    }

    #[test]
    fn theta_events_match_dense_scan() {
        // Oracle: sweep theta densely, detect where some ray's exit point
        // jumps to a different edge.
        let h = shapes::hexagon::<f64>();
        let p = Point::new(2.5, 6.0);
        let n = 5;
        let ev = theta_events(&h, p, n).unwrap();
        assert!(ev.len() <= n * h.len());
        let fr = Fractions::equal(n).unwrap();
        let exit_edges = |theta: f64| -> Vec<usize> {
            let table = SectorTable::new(&h, p);
            let start = table.hit_at_sweep(table.sweep_of_angle(theta)).area;
            let mut hits = Vec::new();
            closed_hits(&table, start, &fr, &mut hits);
            hits.iter()
                .map(|hit| {
                    let q = p + hit.far;
                    (0..h.len())
                        .min_by(|&i, &j| {
                            let (a, b) = h.edge(i);
                            let (c, d) = h.edge(j);
                            crate::geometry::segment_distance(q, a, b)
                                .partial_cmp(&crate::geometry::segment_distance(q, c, d))
                                .unwrap()
                        })
                        .unwrap()
                })
                .collect()
        };
        let steps = 20_000;
        let mut changes = Vec::new();
        let mut prev = exit_edges(0.0);
        for k in 1..=steps {
            let th = 2.0 * PI * k as f64 / steps as f64;
            let cur = exit_edges(th);
            if cur != prev {
                changes.push(th);
            }
            prev = cur;
        }
        assert_eq!(changes.len(), ev.len());
        for c in &changes {
            let d = ev
                .iter()
                .map(|e| {
                    let x = (c - e).abs();
                    x.min(2.0 * PI - x)
                })
                .fold(f64::INFINITY, f64::min);
            assert!(d <= 2.0 * PI / steps as f64 + 1e-9);
        }
    }

    #[test]
    fn fairness_square_center_n4_is_one() {
        let sq = square();
        for mode in [ThetaMode::Exact, ThetaMode::Sampled(32)] {
            let r = fairness_at_point(&sq, Point::new(0.5, 0.5), 4, mode);
            assert!((r.value.get() - 1.0).abs() < 1e-12, "{mode:?}");
            let fan = r.fan.unwrap();
            assert_eq!(fan.rays.len(), 4);
            assert!(fan.rays[0] < 1e-6, "witness theta {}", fan.rays[0]);
        }
    }

    #[test]
    fn fairness_of_one_piece_is_one() {
        let t = shapes::triangle::<f64>();
        for p in [Point::new(5.0, 3.0), Point::new(50.0, -3.0), Point::new(0.0, 0.0)] {
            assert_eq!(fairness_value(&t, p, 1, ThetaMode::Exact).get(), 1.0);
        }
    }

    #[test]
    fn exterior_value_matches_partition() {
        let h = shapes::hexagon::<f64>();
        let p = Point::new(20.0, 20.0);
        let r = fairness_at_point(&h, p, 7, ThetaMode::Exact);
        let part = exterior_fan(&h, p, &Fractions::equal(7).unwrap()).unwrap();
        let direct = fairness_ratio(&part).unwrap().get();
        assert!((r.value.get() - direct).abs() < 1e-9);
    }

    #[test]
    fn interior_n2_uses_straight_cuts() {
        let sq = square();
        let r = fairness_at_point(&sq, Point::new(0.5, 0.5), 2, ThetaMode::Exact);
        assert!((r.value.get() - 1.0).abs() < 1e-9);
        let r = fairness_at_point(&sq, Point::new(0.3, 0.45), 2, ThetaMode::Exact);
        assert!(r.value.is_finite());
        let fan = r.fan.unwrap();
        let gap = normalize_angle(fan.rays[1] - fan.rays[0]);
        assert!((gap - PI).abs() < 1e-8);
    }

    #[test]
    fn exact_and_sampled_agree_on_hexagon() {
        let h = shapes::hexagon::<f64>();
        for (p, n) in [(Point::new(3.0, 6.0), 3), (Point::new(1.0, 8.0), 5), (Point::new(5.0, 4.0), 2)] {
            let e = fairness_value(&h, p, n, ThetaMode::Exact).get();
            let s = fairness_value(&h, p, n, ThetaMode::Sampled(4096)).get();
            assert!((e - s).abs() / s < 1e-4, "{p:?} n={n}: {e} vs {s}");
            assert!(e <= s * (1.0 + 1e-9));
        }
    }

    #[test]
    fn theta_profile_reports_best() {
        let h = shapes::hexagon::<f64>();
        let prof = theta_profile(&h, Point::new(3.0, 6.0), 4, ThetaMode::Sampled(16)).unwrap();
        assert_eq!(prof.samples.len(), 16);
        let best_sample = prof
            .samples
            .iter()
            .filter(|s| s.feasible)
            .map(|s| s.value)
            .min()
            .unwrap();
        assert!(prof.best_value <= best_sample);
        assert!(prof.events.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn asymptotic_interior_values() {
        let sq = square();
        assert!((asymptotic_fairness(&sq, Point::new(0.5, 0.5)).get() - SQRT_2).abs() < 1e-14);
        let v = asymptotic_fairness(&sq, Point::new(0.5, 0.001)).get();
        let want = (0.25f64 + 0.999 * 0.999).sqrt() / 0.001;
        assert!((v - want).abs() / want < 1e-12);
        assert!((v - 1117.2).abs() < 0.1);
    }

    #[test]
    fn asymptotic_exterior_generic_is_infinite() {
        let h = shapes::hexagon::<f64>();
        assert!(!asymptotic_fairness(&h, Point::new(20.0, 20.0)).is_finite());
    }

    #[test]
    fn asymptotic_at_edge_intersections_is_finite_and_fragile() {
        let h = shapes::hexagon::<f64>();
        let pts = crate::geometry::edge_extension_intersections(&h);
        assert!(!pts.is_empty());
        let nudge = Point::new(0.6, 0.8) * (1e-3 * h.diameter());
        for p in pts {
            let v = asymptotic_fairness(&h, p);
            assert!(v.is_finite(), "{p:?}");
            assert!(!asymptotic_fairness(&h, p + nudge).is_finite(), "{p:?}");
        }
    }

    #[test]
    fn asymptotic_exterior_matches_chord_scan() {
        // Oracle: dense scan of chord lengths over directions at the
        // intersection of the lines of the hexagon's first and third edges.
        let h = shapes::hexagon::<f64>();
        let pts = crate::geometry::edge_extension_intersections(&h);
        for p in pts {
            let v = asymptotic_fairness(&h, p).get();
            let mut lo = f64::INFINITY;
            let mut hi = 0.0f64;
            let steps = 200_000;
            for k in 0..steps {
                let a = 2.0 * PI * k as f64 / steps as f64;
                let c = chord_length(&h, &Ray::new(p, a));
                if c > 1e-9 {
                    lo = lo.min(c);
                    hi = hi.max(c);
                }
            }
            // Include the tangent edges explicitly; the scan only approaches them.
            let table = SectorTable::new(&h, p);
            for e in table.tangent_edges().into_iter().flatten() {
                lo = lo.min(e);
                hi = hi.max(e);
            }
            assert!((v - hi / lo).abs() / v < 1e-4, "{p:?}: {v} vs {}", hi / lo);
        }
    }

    #[test]
    fn asymptotic_on_boundary_is_finite() {
        let sq = square();
        // Edge midpoint: chords run from 1/2 (along the edge) to sqrt(5)/2.
        let v = asymptotic_fairness(&sq, Point::new(0.5, 0.0)).get();
        assert!((v - 5.0f64.sqrt()).abs() < 1e-9);
        // Corner: chords run from 1 to sqrt(2).
        let v = asymptotic_fairness(&sq, Point::new(0.0, 0.0)).get();
        assert!((v - SQRT_2).abs() < 1e-9);
    }

    #[test]
    fn fairness_value_display() {
        assert_eq!(FairnessValue::<f64>::infinite().to_string(), "inf");
        assert_eq!(FairnessValue::new(1.5f64).to_string(), "1.5");
        assert!(FairnessValue::new(2.0f64) < FairnessValue::infinite());
    }
}
