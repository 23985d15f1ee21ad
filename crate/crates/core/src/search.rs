//! Scanning the fairness terrain and locating its minima.

use rayon::prelude::*;
use thiserror::Error;

use crate::fairness::{asymptotic_fairness, fairness_at_point, FairnessValue, ThetaMode};
use crate::geometry::{
    boundary_distance_extremes, classify_point, edge_extension_intersections, ConvexPolygon, Point,
    PointClass,
};
use crate::optimize::{pattern_search, PatternSearch};
use crate::partition::{pieces_of, Fan, FanOrigin, FanPartition, Fractions};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("window must have positive width and height")]
    BadWindow,
    #[error("resolution must be at least 2x2")]
    BadResolution,
    #[error("at least 4 theta samples are needed")]
    BadThetaSamples,
    #[error("every terrain value is infinite")]
    AllInfinite,
    #[error("number of pieces must be at least 1")]
    NoPieces,
}

/// Which fairness function a terrain samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NMode {
    Finite(usize),
    Asymptotic,
}

impl NMode {
    /// Fairness at `p`; finite `n` uses the given rotation mode.
    pub fn value<T: Scalar>(self, polygon: &ConvexPolygon<T>, p: Point<T>, mode: ThetaMode) -> FairnessValue<T> {
        match self {
            NMode::Finite(n) => fairness_at_point(polygon, p, n, mode).value,
            NMode::Asymptotic => asymptotic_fairness(polygon, p),
        }
    }
}

/// Axis-aligned rectangle `[x0, x1] x [y0, y1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window<T> {
    pub x0: T,
    pub y0: T,
    pub x1: T,
    pub y1: T,
}

impl<T: Scalar> Window<T> {
    pub fn new(x0: T, y0: T, x1: T, y1: T) -> Self {
        Self { x0, y0, x1, y1 }
    }

    pub fn is_valid(&self) -> bool {
        [self.x0, self.y0, self.x1, self.y1].iter().all(|v| v.is_finite()) && self.x1 > self.x0 && self.y1 > self.y0
    }

    pub fn contains(&self, p: Point<T>) -> bool {
        p.x >= self.x0 && p.x <= self.x1 && p.y >= self.y0 && p.y <= self.y1
    }

    /// The polygon's bounding box scaled by `factor` about its center.
    pub fn around(polygon: &ConvexPolygon<T>, factor: T) -> Self {
        let (lo, hi) = polygon.bounding_box();
        let c = (lo + hi) * T::half();
        let h = (hi - lo) * (factor * T::half());
        Self::new(c.x - h.x, c.y - h.y, c.x + h.x, c.y + h.y)
    }
}

/// Fairness values sampled at the cell centers of a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Terrain<T> {
    pub window: Window<T>,
    pub cols: usize,
    pub rows: usize,
    pub n_mode: NMode,
    pub theta_samples: usize,
    /// Row-major with row 0 at the bottom (`y0`).
    pub values: Vec<FairnessValue<T>>,
}

impl<T: Scalar> Terrain<T> {
    pub fn cell_size(&self) -> (T, T) {
        (
            (self.window.x1 - self.window.x0) / T::lit(self.cols as f64),
            (self.window.y1 - self.window.y0) / T::lit(self.rows as f64),
        )
    }

    pub fn cell_diagonal(&self) -> T {
        let (dx, dy) = self.cell_size();
        dx.hypot(dy)
    }

    pub fn index(&self, col: usize, row: usize) -> usize {
        row * self.cols + col
    }

    pub fn cell_of(&self, index: usize) -> (usize, usize) {
        (index % self.cols, index / self.cols)
    }

    pub fn point(&self, col: usize, row: usize) -> Point<T> {
        cell_center(&self.window, self.cols, self.rows, col, row)
    }

    pub fn point_at(&self, index: usize) -> Point<T> {
        let (c, r) = self.cell_of(index);
        self.point(c, r)
    }

    pub fn get(&self, col: usize, row: usize) -> FairnessValue<T> {
        self.values[self.index(col, row)]
    }

    /// The same grid in another precision.
    pub fn cast<U: Scalar>(&self) -> Terrain<U> {
        let c = |v: T| U::from_f64(v.to_f64_lossy()).unwrap_or_else(U::infinity);
        Terrain {
            window: Window::new(c(self.window.x0), c(self.window.y0), c(self.window.x1), c(self.window.y1)),
            cols: self.cols,
            rows: self.rows,
            n_mode: self.n_mode,
            theta_samples: self.theta_samples,
            values: self.values.iter().map(|v| FairnessValue::new(c(v.get()))).collect(),
        }
    }
}

fn cell_center<T: Scalar>(w: &Window<T>, cols: usize, rows: usize, col: usize, row: usize) -> Point<T> {
    let fx = (T::lit(col as f64) + T::half()) / T::lit(cols as f64);
    let fy = (T::lit(row as f64) + T::half()) / T::lit(rows as f64);
    Point::new(w.x0 + (w.x1 - w.x0) * fx, w.y0 + (w.y1 - w.y0) * fy)
}

/// Samples the fairness function at every cell center, in parallel.
pub fn scan_terrain<T: Scalar>(
    polygon: &ConvexPolygon<T>,
    n_mode: NMode,
    window: Window<T>,
    resolution: (usize, usize),
    theta_samples: usize,
) -> Result<Terrain<T>, SearchError> {
    if !window.is_valid() {
        return Err(SearchError::BadWindow);
    }
    let (cols, rows) = resolution;
    if cols < 2 || rows < 2 {
        return Err(SearchError::BadResolution);
    }
    if let NMode::Finite(n) = n_mode {
        if n == 0 {
            return Err(SearchError::NoPieces);
        }
        if theta_samples < 4 {
            return Err(SearchError::BadThetaSamples);
        }
    }
    let mode = ThetaMode::Sampled(theta_samples);
    let values = (0..cols * rows)
        .into_par_iter()
        .map(|i| n_mode.value(polygon, cell_center(&window, cols, rows, i % cols, i / cols), mode))
        .collect();
    Ok(Terrain {
        window,
        cols,
        rows,
        n_mode,
        theta_samples,
        values,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinimumKind {
    Grid,
    Refined,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Minimum<T> {
    pub location: Point<T>,
    pub value: FairnessValue<T>,
    pub kind: MinimumKind,
    /// Grid cell the minimum was seeded from, if any.
    pub basin_seed: Option<usize>,
}

/// Cells no larger than any of their 8 neighbours, skipping the window
/// border. A connected plateau of equal minima is reported once, at its
/// smallest index.
pub fn local_minima<T: Scalar>(terrain: &Terrain<T>) -> Result<Vec<Minimum<T>>, SearchError> {
    if terrain.values.iter().all(|v| !v.is_finite()) {
        return Err(SearchError::AllInfinite);
    }
    let (cols, rows) = (terrain.cols, terrain.rows);
    let neighbours = |c: usize, r: usize| {
        (-1i64..=1)
            .flat_map(move |dr| (-1i64..=1).map(move |dc| (dc, dr)))
            .filter(|&d| d != (0, 0))
            .map(move |(dc, dr)| ((c as i64 + dc) as usize, (r as i64 + dr) as usize))
    };
    let mut is_min = vec![false; cols * rows];
    for r in 1..rows.saturating_sub(1) {
        for c in 1..cols.saturating_sub(1) {
            let v = terrain.get(c, r);
            if v.is_finite() && neighbours(c, r).all(|(nc, nr)| v <= terrain.get(nc, nr)) {
                is_min[terrain.index(c, r)] = true;
            }
        }
    }
    let mut seen = vec![false; cols * rows];
    let mut out = Vec::new();
    for start in 0..cols * rows {
        if !is_min[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        let v = terrain.values[start];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            let (c, r) = terrain.cell_of(i);
            for (nc, nr) in neighbours(c, r) {
                let j = terrain.index(nc, nr);
                if is_min[j] && !seen[j] && terrain.values[j] == v {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        out.push(Minimum {
            location: terrain.point_at(start),
            value: v,
            kind: MinimumKind::Grid,
            basin_seed: Some(start),
        });
    }
    Ok(out)
}

/// How far a basin must be flooded before it drains into a deeper one:
/// `saddle - bottom`, or `inf` for the deepest basin of each finite region.
/// Each finite cell gets the value of the basin it belongs to when the flood
/// first reaches it; infinite cells are walls and get `None`. Cells are
/// flooded in order of value then index.
pub fn basin_persistence<T: Scalar>(terrain: &Terrain<T>) -> Vec<Option<T>> {
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let len = terrain.values.len();
    let key = |i: usize| (terrain.values[i], i);
    let mut order: Vec<usize> = (0..len).filter(|&i| terrain.values[i].is_finite()).collect();
    order.sort_by_key(|&i| key(i));
    let mut parent: Vec<usize> = (0..len).collect();
    // Lowest cell of the basin rooted at each index.
    let birth: Vec<usize> = (0..len).collect();
    let mut active = vec![false; len];
    let mut out: Vec<Option<T>> = vec![None; len];
    let mut first: Vec<usize> = (0..len).collect();
    let (cols, rows) = (terrain.cols as i64, terrain.rows as i64);
    for &i in &order {
        active[i] = true;
        let (c, r) = terrain.cell_of(i);
        let mut joined = false;
        for (dc, dr) in (-1i64..=1).flat_map(|dr| (-1i64..=1).map(move |dc| (dc, dr))) {
            let (nc, nr) = (c as i64 + dc, r as i64 + dr);
            if (dc, dr) == (0, 0) || nc < 0 || nr < 0 || nc >= cols || nr >= rows {
                continue;
            }
            let j = terrain.index(nc as usize, nr as usize);
            if !active[j] {
                continue;
            }
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri == rj {
                continue;
            }
            if !joined {
                // First contact: the new cell simply joins this basin.
                parent[ri] = rj;
                joined = true;
                continue;
            }
            let (old, young) = if key(birth[ri]) <= key(birth[rj]) { (ri, rj) } else { (rj, ri) };
            let y = birth[young];
            out[y] = Some(terrain.values[i].get() - terrain.values[y].get());
            parent[young] = old;
        }
        if !joined {
            out[i] = Some(T::infinity());
        }
        first[i] = birth[find(&mut parent, i)];
    }
    (0..len).map(|i| if terrain.values[i].is_finite() { out[first[i]] } else { None }).collect()
}

/// Default relative basin depth for [`significant_minima`].
pub const DEFAULT_MIN_DEPTH: f64 = 0.05;

/// [`local_minima`] whose basins are deep enough: the basin's persistence
/// (see [`basin_persistence`]) is at least `rel_depth` times its value.
/// Shallow dents from polygon corners and grid aliasing drop out.
pub fn significant_minima<T: Scalar>(terrain: &Terrain<T>, rel_depth: T) -> Result<Vec<Minimum<T>>, SearchError> {
    let all = local_minima(terrain)?;
    let pers = basin_persistence(terrain);
    Ok(all
        .into_iter()
        .filter(|m| {
            let i = m.basin_seed.expect("grid minimum");
            pers[i].is_some_and(|p| p >= rel_depth * m.value.get())
        })
        .collect())
}

/// Significant grid minima of `terrain`, refined and merged.
pub fn terrain_minima<T: Scalar>(
    polygon: &ConvexPolygon<T>,
    terrain: &Terrain<T>,
    rel_depth: T,
    mode: ThetaMode,
) -> Result<Vec<Minimum<T>>, SearchError> {
    let grid = significant_minima(terrain, rel_depth)?;
    Ok(refine_all(polygon, terrain, &grid, mode))
}

/// Pattern search on the fairness function from `seed`, with the rotation
/// optimized by `mode` at every poll. The first step is `step`; the last is
/// `1e-7` of the polygon diameter. The result is never worse than the seed.
pub fn refine_minimum<T: Scalar>(
    polygon: &ConvexPolygon<T>,
    n_mode: NMode,
    seed: Point<T>,
    step: T,
    mode: ThetaMode,
) -> Minimum<T> {
    let cfg = PatternSearch {
        initial_step: step,
        min_step: T::lit(1e-7) * polygon.diameter(),
        directions: 8,
        max_evals: 20_000,
    };
    let r = pattern_search(|p| n_mode.value(polygon, p, mode).get(), seed, &cfg);
    Minimum {
        location: r.point,
        value: FairnessValue::new(r.value),
        kind: MinimumKind::Refined,
        basin_seed: None,
    }
}

/// Refines every grid minimum of `terrain` in parallel and merges results
/// that land within one cell diagonal of each other. A refinement that ends
/// above its seed's grid value keeps the grid cell.
pub fn refine_all<T: Scalar>(
    polygon: &ConvexPolygon<T>,
    terrain: &Terrain<T>,
    minima: &[Minimum<T>],
    mode: ThetaMode,
) -> Vec<Minimum<T>> {
    let (dx, dy) = terrain.cell_size();
    let step = dx.min(dy);
    let refined: Vec<Minimum<T>> = minima
        .par_iter()
        .map(|m| {
            let mut r = refine_minimum(polygon, terrain.n_mode, m.location, step, mode);
            r.basin_seed = m.basin_seed;
            if r.value > m.value {
                Minimum { kind: MinimumKind::Grid, ..*m }
            } else {
                r
            }
        })
        .collect();
    merge_close(refined, terrain.cell_diagonal())
}

fn better<T: Scalar>(a: &Minimum<T>, b: &Minimum<T>) -> std::cmp::Ordering {
    a.value
        .cmp(&b.value)
        .then(a.location.x.partial_cmp(&b.location.x).unwrap_or(std::cmp::Ordering::Equal))
        .then(a.location.y.partial_cmp(&b.location.y).unwrap_or(std::cmp::Ordering::Equal))
}

/// Keeps the best of every cluster of minima closer than `radius`.
pub fn merge_close<T: Scalar>(mut minima: Vec<Minimum<T>>, radius: T) -> Vec<Minimum<T>> {
    minima.sort_by(better);
    let mut kept: Vec<Minimum<T>> = Vec::new();
    for m in minima {
        if kept.iter().all(|k| k.location.distance(m.location) > radius) {
            kept.push(m);
        }
    }
    kept
}

/// A candidate origin with its asymptotic fairness.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Candidate<T> {
    pub point: Point<T>,
    pub value: FairnessValue<T>,
}

/// Where the fairest fans sit as `n` grows.
#[derive(Clone, Debug, PartialEq)]
pub struct CandidateSet<T> {
    pub vertices: Vec<Candidate<T>>,
    pub edge_midpoints: Vec<Candidate<T>>,
    pub exterior_intersections: Vec<Candidate<T>>,
    pub interior_minimum: Candidate<T>,
}

impl<T: Scalar> CandidateSet<T> {
    pub fn len(&self) -> usize {
        self.vertices.len() + self.edge_midpoints.len() + self.exterior_intersections.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// All candidates: vertices, midpoints, exterior points, interior point.
    pub fn iter(&self) -> impl Iterator<Item = &Candidate<T>> {
        self.vertices
            .iter()
            .chain(&self.edge_midpoints)
            .chain(&self.exterior_intersections)
            .chain(std::iter::once(&self.interior_minimum))
    }

    pub fn nearest_distance(&self, p: Point<T>) -> T {
        self.iter().map(|c| c.point.distance(p)).fold(T::infinity(), T::min)
    }
}

pub fn asymptotic_candidates<T: Scalar>(polygon: &ConvexPolygon<T>) -> CandidateSet<T> {
    let tag = |p: Point<T>| Candidate {
        point: p,
        value: asymptotic_fairness(polygon, p),
    };
    let (ip, iv) = interior_asymptotic_minimum(polygon);
    CandidateSet {
        vertices: polygon.vertices().iter().map(|&v| tag(v)).collect(),
        edge_midpoints: (0..polygon.len())
            .map(|i| {
                let (a, b) = polygon.edge(i);
                tag(a.lerp(b, T::half()))
            })
            .collect(),
        exterior_intersections: edge_extension_intersections(polygon).into_iter().map(tag).collect(),
        interior_minimum: Candidate { point: ip, value: iv },
    }
}

/// The interior point minimizing farthest over nearest boundary distance.
/// Multi-start pattern search from the centroid and four points between the
/// centroid and the vertices.
pub fn interior_asymptotic_minimum<T: Scalar>(polygon: &ConvexPolygon<T>) -> (Point<T>, FairnessValue<T>) {
    let scale = polygon.diameter();
    let f = |p: Point<T>| {
        if classify_point(polygon, p) != PointClass::Interior {
            return T::infinity();
        }
        match boundary_distance_extremes(polygon, p) {
            Ok((lo, hi)) if lo > T::zero() => hi / lo,
            _ => T::infinity(),
        }
    };
    let c = polygon.centroid();
    let m = polygon.len();
    let mut starts = vec![c];
    starts.extend((0..4).map(|k| c.lerp(polygon.vertex(k * m / 4), T::lit(0.3))));
    let cfg = PatternSearch {
        initial_step: scale / T::lit(4.0),
        min_step: T::lit(1e-9) * scale,
        directions: 16,
        max_evals: 50_000,
    };
    let mut best = (c, f(c));
    for s in starts {
        let mut r = pattern_search(f, s, &cfg);
        // Restarting with rotated poll directions gets past kinks where all
        // sixteen directions point uphill.
        for round in 1..4 {
            let rot = T::PI() * T::lit(round as f64) / T::lit(64.0);
            let dirs = Point::from_angle(rot);
            let g = |p: Point<T>| {
                let d = p - r.point;
                f(r.point + Point::new(d.x * dirs.x - d.y * dirs.y, d.x * dirs.y + d.y * dirs.x))
            };
            let cfg2 = PatternSearch {
                initial_step: scale * T::lit(1e-3),
                ..cfg
            };
            let q = pattern_search(g, r.point, &cfg2);
            if q.value < r.value {
                let d = q.point - r.point;
                r.point = r.point + Point::new(d.x * dirs.x - d.y * dirs.y, d.x * dirs.y + d.y * dirs.x);
                r.value = q.value;
            }
        }
        if r.value < best.1 {
            best = (r.point, r.value);
        }
    }
    (best.0, FairnessValue::new(best.1))
}

/// How [`fairest_fan`] looks for the global minimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Scan a window around the polygon and refine every grid minimum.
    Scan,
    /// Refine from each asymptotic candidate.
    Candidates,
    /// `Scan` below the threshold; above it, candidates plus a coarse scan.
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchConfig {
    pub resolution: (usize, usize),
    pub theta_samples: usize,
    /// `Auto` switches to candidates at this `n`.
    pub candidate_threshold: usize,
    /// Rotation optimization used while refining.
    pub refine_mode: ThetaMode,
    /// Bounding-box scale factor of the scan window.
    pub window_factor: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            resolution: (80, 60),
            theta_samples: 32,
            candidate_threshold: 30,
            refine_mode: ThetaMode::Exact,
            window_factor: 2.0,
        }
    }
}

/// The fan partition with origin `p` that attains `F(p, n)`.
pub fn witness_partition<T: Scalar>(polygon: &ConvexPolygon<T>, p: Point<T>, n: usize, mode: ThetaMode) -> Option<FanPartition<T>> {
    let fan = fairness_at_point(polygon, p, n, mode).fan?;
    partition_of(polygon, fan, n)
}

fn partition_of<T: Scalar>(polygon: &ConvexPolygon<T>, fan: Fan<T>, n: usize) -> Option<FanPartition<T>> {
    let pieces = pieces_of(polygon, &fan).ok()?;
    let fr = Fractions::<T>::equal(n).ok()?;
    Some(FanPartition {
        fan,
        pieces,
        target_fractions: fr.values().to_vec(),
    })
}

fn scan_minima<T: Scalar>(
    polygon: &ConvexPolygon<T>,
    n: usize,
    resolution: (usize, usize),
    cfg: &SearchConfig,
) -> Result<Vec<Minimum<T>>, SearchError> {
    let window = Window::around(polygon, T::lit(cfg.window_factor));
    let terrain = scan_terrain(polygon, NMode::Finite(n), window, resolution, cfg.theta_samples)?;
    let grid = local_minima(&terrain)?;
    Ok(refine_all(polygon, &terrain, &grid, cfg.refine_mode))
}

fn candidate_minima<T: Scalar>(polygon: &ConvexPolygon<T>, n: usize, cfg: &SearchConfig) -> Vec<Minimum<T>> {
    let step = polygon.diameter() / T::lit(50.0);
    let seeds: Vec<Point<T>> = asymptotic_candidates(polygon).iter().map(|c| c.point).collect();
    seeds
        .par_iter()
        .map(|&s| refine_minimum(polygon, NMode::Finite(n), s, step, cfg.refine_mode))
        .collect()
}

/// The fairest `n`-fan found, with its partition.
pub fn fairest_fan<T: Scalar>(
    polygon: &ConvexPolygon<T>,
    n: usize,
    strategy: Strategy,
    cfg: &SearchConfig,
) -> Result<(Minimum<T>, FanPartition<T>), SearchError> {
    if n == 0 {
        return Err(SearchError::NoPieces);
    }
    if n == 1 {
        let c = polygon.centroid();
        let fan = Fan {
            origin: FanOrigin::Finite(c),
            rays: Vec::new(),
            closed: true,
        };
        let part = partition_of(polygon, fan, 1).expect("whole polygon");
        let m = Minimum {
            location: c,
            value: FairnessValue::one(),
            kind: MinimumKind::Refined,
            basin_seed: None,
        };
        return Ok((m, part));
    }
    let minima = match strategy {
        Strategy::Scan => scan_minima(polygon, n, cfg.resolution, cfg)?,
        Strategy::Candidates => candidate_minima(polygon, n, cfg),
        Strategy::Auto if n < cfg.candidate_threshold => scan_minima(polygon, n, cfg.resolution, cfg)?,
        Strategy::Auto => {
            let coarse = ((cfg.resolution.0 / 2).max(2), (cfg.resolution.1 / 2).max(2));
            let mut all = candidate_minima(polygon, n, cfg);
            all.extend(scan_minima(polygon, n, coarse, cfg)?);
            all
        }
    };
    let best = minima
        .into_iter()
        .filter(|m| m.value.is_finite())
        .min_by(better)
        .ok_or(SearchError::AllInfinite)?;
    let part = witness_partition(polygon, best.location, n, cfg.refine_mode).ok_or(SearchError::AllInfinite)?;
    Ok((best, part))
}

/// A perfect (fairness within `1 + tol`) fan found by refining from `seed`.
pub fn find_perfect_fan<T: Scalar>(
    polygon: &ConvexPolygon<T>,
    n: usize,
    seed: Point<T>,
    tol: T,
) -> Option<(Minimum<T>, FanPartition<T>)> {
    if n == 0 {
        return None;
    }
    let step = polygon.diameter() / T::lit(100.0);
    let m = refine_minimum(polygon, NMode::Finite(n), seed, step, ThetaMode::Exact);
    if m.value.get() > T::one() + tol {
        return None;
    }
    let part = witness_partition(polygon, m.location, n, ThetaMode::Exact)?;
    Some((m, part))
}
