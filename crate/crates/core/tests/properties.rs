mod common;

use std::f64::consts::{PI, TAU};

use fairfan_core::fairness::{asymptotic_fairness, fairness_at_point, fairness_value};
use fairfan_core::geometry::{
    boundary_distance_extremes, chord_length, classify_point, edge_extension_intersections, PointClass, Ray,
    SectorTable,
};
use fairfan_core::partition::{exterior_fan, interior_fan, parallel_fan, pieces_of, Fan, Fractions};
use fairfan_core::search::{
    fairest_fan, local_minima, refine_minimum, scan_terrain, NMode, SearchConfig, Strategy, Window,
};
use fairfan_core::{shapes, Point, ThetaMode};
use proptest::prelude::*;
use rand::Rng;

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 100,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn area_and_perimeter_under_similarity(seed in any::<u64>(), m in 3usize..10, rot in 0.0..TAU, scale in 0.1f64..10.0) {
        let mut rng = common::rng(seed);
        let poly = common::random_polygon(&mut rng, m);
        let moved = poly.transformed(rot, 1.0, Point::new(3.0, -7.0));
        prop_assert!((moved.area() - poly.area()).abs() <= 1e-9 * poly.area());
        prop_assert!((moved.perimeter() - poly.perimeter()).abs() <= 1e-9 * poly.perimeter());
        let scaled = poly.transformed(0.0, scale, Point::zero());
        prop_assert!((scaled.area() - scale * scale * poly.area()).abs() <= 1e-9 * scaled.area());
        prop_assert!((scaled.perimeter() - scale * poly.perimeter()).abs() <= 1e-9 * scaled.perimeter());
    }

    #[test]
    fn sector_table_sweeps_the_whole_area(seed in any::<u64>(), m in 3usize..10, inside in any::<bool>()) {
        let mut rng = common::rng(seed);
        let poly = common::random_polygon(&mut rng, m);
        let apex = if inside {
            common::random_interior(&mut rng, &poly)
        } else {
            common::random_exterior(&mut rng, &poly)
        };
        let table = SectorTable::new(&poly, apex);
        let cum = table.cumulative_areas();
        prop_assert!(cum.windows(2).all(|w| w[0] <= w[1]));
        let last = *cum.last().unwrap();
        prop_assert!((last - poly.area()).abs() <= 1e-9 * poly.area());
    }

    #[test]
    fn edge_line_intersections_are_exterior(seed in any::<u64>(), m in 3usize..10) {
        let mut rng = common::rng(seed);
        let poly = common::random_polygon(&mut rng, m);
        let pts = edge_extension_intersections(&poly);
        prop_assert!(pts.len() <= m * (m - 1) / 2);
        for p in pts {
            prop_assert_eq!(classify_point(&poly, p), PointClass::Exterior);
        }
    }

    #[test]
    fn exterior_fan_is_locally_unique(seed in any::<u64>(), m in 3usize..10, n in 2usize..=12) {
        let mut rng = common::rng(seed);
        let poly = common::random_polygon(&mut rng, m);
        let p = common::random_exterior(&mut rng, &poly);
        let fr = Fractions::equal(n).unwrap();
        let part = exterior_fan(&poly, p, &fr).unwrap();
        let target = poly.area() / n as f64;
        let deviation = |areas: &[f64]| areas.iter().map(|a| (a - target).abs()).fold(0.0, f64::max);
        let base = deviation(&part.areas());
        prop_assert!(base <= 1e-9 * target);
        let mut rays = part.fan.rays.clone();
        let k = rng.gen_range(0..rays.len());
        rays[k] += if rng.gen_bool(0.5) { 1e-6 } else { -1e-6 };
        let fan = Fan { rays, ..part.fan.clone() };
        let moved = pieces_of(&poly, &fan).unwrap();
        let areas: Vec<f64> = moved.iter().map(|pc| pc.area).collect();
        prop_assert!(deviation(&areas) > base);
    }

    #[test]
    fn interior_fan_rotation_closure(seed in any::<u64>(), m in 3usize..10, n in 3usize..=8, theta in 0.0..TAU) {
        let mut rng = common::rng(seed);
        let poly = common::random_polygon(&mut rng, m);
        let p = common::random_interior(&mut rng, &poly);
        let fr = Fractions::equal(n).unwrap();
        let Some(a) = interior_fan(&poly, p, &fr, theta).unwrap().feasible() else {
            return Ok(());
        };
        let b = interior_fan(&poly, p, &fr, a.fan.rays[1]).unwrap().feasible().expect("same fan");
        let sorted = |mut v: Vec<f64>| {
            v.sort_by(|x, y| x.partial_cmp(y).unwrap());
            v
        };
        for (x, y) in sorted(a.perimeters()).iter().zip(sorted(b.perimeters())) {
            prop_assert!((x - y).abs() <= 1e-7);
        }
        for (x, y) in sorted(a.areas()).iter().zip(sorted(b.areas())) {
            prop_assert!((x - y).abs() <= 1e-7);
        }
    }

    #[test]
    fn interior_chords_and_nearest_boundary(seed in any::<u64>(), m in 3usize..10) {
        let mut rng = common::rng(seed);
        let poly = common::random_polygon(&mut rng, m);
        let p = common::random_interior(&mut rng, &poly);
        let (dmin, _) = boundary_distance_extremes(&poly, p).unwrap();
        let mut angles: Vec<f64> = (0..10_000).map(|k| TAU * k as f64 / 10_000.0).collect();
        // Directions perpendicular to each edge, toward it.
        for i in 0..poly.len() {
            let (a, b) = poly.edge(i);
            angles.push((b - a).perp().angle() + PI);
        }
        let mut lo = f64::INFINITY;
        for a in angles {
            let c = chord_length(&poly, &Ray::new(p, a));
            prop_assert!(c <= poly.diameter() * (1.0 + 1e-12));
            lo = lo.min(c);
        }
        prop_assert!((lo - dmin).abs() <= 1e-3 * dmin);
    }

    #[test]
    fn fairness_is_at_least_one(seed in any::<u64>(), m in 3usize..8, n in 1usize..=8, inside in any::<bool>()) {
        let mut rng = common::rng(seed);
        let poly = common::random_polygon(&mut rng, m);
        let p = if inside {
            common::random_interior(&mut rng, &poly)
        } else {
            common::random_exterior(&mut rng, &poly)
        };
        let v = fairness_value(&poly, p, n, ThetaMode::Sampled(16)).get();
        prop_assert!(v >= 1.0);
        if n == 1 {
            prop_assert_eq!(v, 1.0);
        }
    }

    #[test]
    fn refinement_never_worsens(seed in any::<u64>(), n in 2usize..=6) {
        let mut rng = common::rng(seed);
        let poly = common::random_polygon(&mut rng, 5);
        let p = common::random_interior(&mut rng, &poly);
        let start = fairness_value(&poly, p, n, ThetaMode::Exact);
        let r = refine_minimum(&poly, NMode::Finite(n), p, poly.diameter() / 20.0, ThetaMode::Exact);
        prop_assert!(r.value <= start);
    }
}

#[test]
fn exterior_fans_approach_the_parallel_fan() {
    let sq = shapes::unit_square::<f64>();
    let fr = Fractions::equal(3).unwrap();
    let strips = parallel_fan(&sq, PI / 2.0, &fr).unwrap();
    let cuts = strips.fan.rays.clone();
    let mut last = f64::INFINITY;
    for k in 2..=6 {
        let p = Point::new(0.5, -(10f64.powi(k)));
        let part = exterior_fan(&sq, p, &fr).unwrap();
        // Where each ray crosses the bottom edge, left to right. The crossing
        // at mid-height is exact at any distance, so it cannot show the limit.
        let mut xs: Vec<f64> = part.fan.rays.iter().map(|&a| p.x - p.y / a.tan()).collect();
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let err = xs.iter().zip(&cuts).map(|(x, c)| (x - c).abs()).fold(0.0, f64::max);
        assert!(err < last, "k = {k}: {err} vs {last}");
        last = err;
    }
    assert!(last < 1e-5);
}

#[test]
fn asymptotic_blows_up_near_the_boundary() {
    let sq = shapes::unit_square::<f64>();
    for delta in [0.1, 0.05, 0.01, 1e-3, 1e-5] {
        let v = asymptotic_fairness(&sq, Point::new(0.5, delta)).get();
        assert!(v >= 0.5 / delta, "delta {delta}: {v}");
    }
}

#[test]
fn large_n_approaches_the_limit_at_the_center() {
    let e = shapes::ellipse_12gon::<f64>();
    let c = Point::new(0.0, 0.0);
    let limit = asymptotic_fairness(&e, c).get();
    let f = fairness_value(&e, c, 400, ThetaMode::Sampled(32)).get();
    assert!((f - limit).abs() <= 0.05 * limit, "{f} vs {limit}");
}

#[test]
fn no_far_field_minima() {
    // Far away the terrain has sharp radial valleys that descend outward, so
    // coarse grids show aliased minima along them. Check points directly:
    // every ring point has a lower neighbour.
    for poly in [shapes::triangle::<f64>(), shapes::unit_square()] {
        let s = poly.diameter();
        let c = poly.centroid();
        let h = 0.01 * s;
        for i in 0..64 {
            let phi = TAU * i as f64 / 64.0;
            let p = Point::new(c.x + 10.0 * s * phi.cos(), c.y + 10.0 * s * phi.sin());
            let v = fairness_value(&poly, p, 5, ThetaMode::Exact);
            let lower = (0..16).any(|k| {
                let a = TAU * k as f64 / 16.0;
                fairness_value(&poly, Point::new(p.x + h * a.cos(), p.y + h * a.sin()), 5, ThetaMode::Exact) < v
            });
            assert!(lower, "{p:?} is a local minimum");
        }
    }
}

#[test]
fn far_valleys_are_monotone() {
    let tri = shapes::triangle::<f64>();
    let c = tri.centroid();
    let w = Window::new(c.x - 120.0, c.y - 120.0, c.x + 120.0, c.y + 120.0);
    let t = scan_terrain(&tri, NMode::Finite(5), w, (48, 48), 8).unwrap();
    let near = Window::around(&tri, 3.0);
    for m in local_minima(&t).unwrap().into_iter().filter(|m| !near.contains(m.location)) {
        // Each valley floor is monotone in the distance: the lowest point on a
        // short arc further in or further out beats the grid minimum.
        let d = m.location - c;
        let (r, phi) = (d.x.hypot(d.y), d.y.atan2(d.x));
        let best = [0.67 * r, 1.5 * r]
            .into_iter()
            .flat_map(|rr| (-300..=300).map(move |k| (rr, phi + k as f64 * 1e-4)))
            .map(|(rr, a)| fairness_value(&tri, Point::new(c.x + rr * a.cos(), c.y + rr * a.sin()), 5, ThetaMode::Exact))
            .min()
            .unwrap();
        assert!(best < m.value, "{:?}: {} vs {}", m.location, best, m.value);
    }
}

#[test]
fn scans_are_deterministic() {
    let h = shapes::hexagon::<f64>();
    let w = Window::new(-10.0, -5.0, 15.0, 17.0);
    let a = scan_terrain(&h, NMode::Finite(4), w, (30, 24), 8).unwrap();
    let b = scan_terrain(&h, NMode::Finite(4), w, (30, 24), 8).unwrap();
    assert_eq!(a, b);
    assert_eq!(local_minima(&a).unwrap(), local_minima(&b).unwrap());
}

#[test]
fn fairest_single_piece_is_the_polygon() {
    let h = shapes::hexagon::<f64>();
    let (m, part) = fairest_fan(&h, 1, Strategy::Auto, &SearchConfig::default()).unwrap();
    assert_eq!(m.value.get(), 1.0);
    assert_eq!(part.pieces.len(), 1);
    assert!((part.pieces[0].area - 138.5).abs() < 1e-12);
}

#[test]
fn f32_matches_f64() {
    let h64 = shapes::hexagon::<f64>();
    let h32 = shapes::hexagon::<f32>();
    for (x, y, n) in [(3.0, 6.0, 3), (20.0, 20.0, 5), (5.0, -2.0, 4)] {
        let a = fairness_at_point(&h64, Point::new(x, y), n, ThetaMode::Exact).value.get();
        let b = fairness_at_point(&h32, fairfan_core::Point32::new(x as f32, y as f32), n, ThetaMode::Exact)
            .value
            .get();
        assert!((a - b as f64).abs() <= 1e-3 * a, "{a} vs {b}");
    }
}
