//! Derivative-free minimizers: golden-section search on an interval and a
//! compass pattern search in the plane.

use crate::geometry::Point;
use crate::scalar::Scalar;

/// Result of a one-dimensional minimization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LineMin<T> {
    pub x: T,
    pub value: T,
    pub evals: usize,
}

/// Golden-section search for a minimum of `f` on `[lo, hi]`.
///
/// Returns the best point evaluated. Non-finite values act as walls, so a
/// function that decreases up to an infeasible region converges onto its edge.
pub fn golden_section<T: Scalar>(
    mut f: impl FnMut(T) -> T,
    lo: T,
    hi: T,
    tol: T,
    max_iter: usize,
) -> LineMin<T> {
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) * T::half();
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut c = b - (b - a) * inv_phi;
    let mut d = a + (b - a) * inv_phi;
    let mut fc = f(c);
    let mut fd = f(d);
    let mut best = if fd < fc {
        LineMin { x: d, value: fd, evals: 2 }
    } else {
        LineMin { x: c, value: fc, evals: 2 }
    };
    let mut iter = 0;
    while (b - a) > tol && iter < max_iter {
        iter += 1;
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - (b - a) * inv_phi;
            fc = f(c);
            if fc < best.value {
                best.x = c;
                best.value = fc;
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + (b - a) * inv_phi;
            fd = f(d);
            if fd < best.value {
                best.x = d;
                best.value = fd;
            }
        }
        best.evals += 1;
    }
    best
}

/// Settings for [`pattern_search`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PatternSearch<T> {
    pub initial_step: T,
    pub min_step: T,
    /// Number of evenly spaced poll directions (4 is the compass rose).
    pub directions: usize,
    pub max_evals: usize,
}

/// Result of a planar minimization.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PlaneMin<T> {
    pub point: Point<T>,
    pub value: T,
    pub evals: usize,
}

/// Poll-and-halve pattern search. Each round polls every direction at the
/// current step and moves to the best improving point; with no improvement
/// the step halves. The returned value never exceeds `f(start)`.
pub fn pattern_search<T: Scalar>(
    mut f: impl FnMut(Point<T>) -> T,
    start: Point<T>,
    cfg: &PatternSearch<T>,
) -> PlaneMin<T> {
    let dirs: Vec<Point<T>> = (0..cfg.directions.max(3))
        .map(|k| Point::from_angle(T::TAU() * T::lit(k as f64) / T::lit(cfg.directions.max(3) as f64)))
        .collect();
    let mut x = start;
    let mut fx = f(x);
    let mut evals = 1;
    let mut step = cfg.initial_step;
    while step >= cfg.min_step && evals < cfg.max_evals {
        let mut best: Option<(Point<T>, T)> = None;
        for d in &dirs {
            let y = x + *d * step;
            let fy = f(y);
            evals += 1;
            if fy < fx && best.map_or(true, |(_, fb)| fy < fb) {
                best = Some((y, fy));
            }
        }
        match best {
            Some((y, fy)) => {
                x = y;
                fx = fy;
            }
            None => step = step * T::half(),
        }
    }
    PlaneMin {
        point: x,
        value: fx,
        evals,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_minimum() {
        let r = golden_section(|x: f64| (x - 0.3).powi(2) + 1.0, -2.0, 5.0, 1e-12, 200);
        assert!((r.x - 0.3).abs() < 1e-6);
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn golden_converges_onto_wall() {
        let r = golden_section(
            |x: f64| if x > 0.7 { f64::INFINITY } else { 2.0 - x },
            0.0,
            1.0,
            1e-12,
            200,
        );
        assert!((r.x - 0.7).abs() < 1e-9);
    }

    #[test]
    fn pattern_search_on_kinked_function() {
        let f = |p: Point<f64>| (p.x - 1.0).abs() + 2.0 * (p.y + 0.5).abs();
        let cfg = PatternSearch {
            initial_step: 0.5,
            min_step: 1e-10,
            directions: 8,
            max_evals: 100_000,
        };
        let r = pattern_search(f, Point::new(3.0, 2.0), &cfg);
        assert!(r.point.distance(Point::new(1.0, -0.5)) < 1e-8);
        assert!(r.value <= f(Point::new(3.0, 2.0)));
    }
}
