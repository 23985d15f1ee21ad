//! One function per subcommand. Each returns the text to emit.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Instant;

use fairfan_core::fairness::{asymptotic_fairness, fairness_at_point};
use fairfan_core::geometry::classify_point;
use fairfan_core::partition::{exterior_fan, interior_fan, parallel_fan, pieces_of, FanOrigin, InteriorFan};
use fairfan_core::search::{
    asymptotic_candidates, fairest_fan, find_perfect_fan, scan_terrain, terrain_minima, witness_partition, NMode,
    SearchConfig, Strategy, Window,
};
use fairfan_core::{FanPartition, Fractions, Point, PointClass, Polygon, ThetaMode};

use crate::gridfile::{gnuplot_script, parse_grid, write_grid};
use crate::polygon_file::{builtin, Loaded, PolygonFile};
use crate::report::{candidate_entries, fmt_value, MinimumEntry, Num, RunReport, WitnessEntry};
use crate::CliError;

fn invalid(e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(e.to_string())
}

pub fn n_mode(n: Option<usize>, asymptotic: bool) -> Result<NMode, CliError> {
    match (n, asymptotic) {
        (_, true) => Ok(NMode::Asymptotic),
        (Some(0), false) => Err(invalid("--n must be at least 1")),
        (Some(n), false) => Ok(NMode::Finite(n)),
        (None, false) => Err(invalid("give --n or --asymptotic")),
    }
}

fn mode_name(n: NMode) -> String {
    match n {
        NMode::Finite(n) => n.to_string(),
        NMode::Asymptotic => "asymptotic".into(),
    }
}

fn theta_mode(exact: bool, samples: usize) -> Result<ThetaMode, CliError> {
    if exact {
        Ok(ThetaMode::Exact)
    } else if samples >= 4 {
        Ok(ThetaMode::Sampled(samples))
    } else {
        Err(invalid("--theta-samples must be at least 4"))
    }
}

fn witness_text(out: &mut String, part: &FanPartition) {
    match part.fan.origin {
        FanOrigin::Finite(o) => {
            let _ = writeln!(out, "origin {} {}", fmt_value(o.x), fmt_value(o.y));
        }
        FanOrigin::AtInfinity { direction } => {
            let _ = writeln!(out, "direction {}", fmt_value(direction));
        }
    }
    let rays: Vec<String> = part.fan.rays.iter().map(|&r| fmt_value(r)).collect();
    let _ = writeln!(out, "rays {}", rays.join(" "));
    for (i, pc) in part.pieces.iter().enumerate() {
        let _ = writeln!(out, "piece {} area {} perimeter {}", i + 1, fmt_value(pc.area), fmt_value(pc.perimeter));
    }
}

pub struct FvalueArgs {
    pub point: Point,
    pub n_mode: NMode,
    pub exact: bool,
    pub theta_samples: usize,
}

/// The value on the first line, then the witness fan.
pub fn fvalue(poly: &Loaded, a: &FvalueArgs) -> Result<String, CliError> {
    let mut out = String::new();
    match a.n_mode {
        NMode::Asymptotic => {
            let v = asymptotic_fairness(&poly.polygon, a.point);
            let _ = writeln!(out, "{}", fmt_value(v.get()));
        }
        NMode::Finite(n) => {
            let mode = theta_mode(a.exact, a.theta_samples)?;
            let pf = fairness_at_point(&poly.polygon, a.point, n, mode);
            let _ = writeln!(out, "{}", fmt_value(pf.value.get()));
            if let Some(fan) = pf.fan {
                let pieces = pieces_of(&poly.polygon, &fan).map_err(invalid)?;
                let part = FanPartition {
                    fan,
                    pieces,
                    target_fractions: Vec::new(),
                };
                witness_text(&mut out, &part);
            }
        }
    }
    Ok(out)
}

pub struct FanArgs {
    pub point: Option<Point>,
    pub direction: Option<f64>,
    pub n: usize,
    pub theta: Option<f64>,
    pub exact: bool,
    pub theta_samples: usize,
}

/// The fan from a point (optionally at a fixed rotation) or at infinity.
pub fn fan(poly: &Loaded, a: &FanArgs) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let p = &poly.polygon;
    let fr = Fractions::equal(a.n).map_err(invalid)?;
    let mut report = RunReport::new("fan", &poly.name, p);
    report.param("n", a.n);
    let part = match (a.point, a.direction) {
        (Some(_), Some(_)) => return Err(invalid("give either --point or --direction, not both")),
        (None, None) => return Err(invalid("give --point or --direction")),
        (None, Some(d)) => {
            report.param("direction", d);
            parallel_fan(p, d, &fr).map_err(invalid)?
        }
        (Some(o), None) => {
            report.param("point", format!("{},{}", o.x, o.y));
            let inside = classify_point(p, o) == PointClass::Interior;
            match (inside, a.theta) {
                (true, Some(t)) => {
                    report.param("theta", t);
                    match interior_fan(p, o, &fr, t).map_err(invalid)? {
                        InteriorFan::Feasible(part) => part,
                        InteriorFan::Infeasible { widest_gap } => {
                            return Err(invalid(format!(
                                "the fan at theta {t} is not convex: a gap of {widest_gap} exceeds pi"
                            )))
                        }
                    }
                }
                (true, None) => {
                    let mode = theta_mode(a.exact, a.theta_samples)?;
                    witness_partition(p, o, a.n, mode)
                        .ok_or_else(|| invalid("no rotation gives a convex fan from this point"))?
                }
                (false, _) => exterior_fan(p, o, &fr).map_err(invalid)?,
            }
        }
    };
    let w = WitnessEntry::from(&part);
    report.value = Some(w.fairness);
    report.witness = Some(w);
    report.elapsed_seconds = Num::new(start.elapsed().as_secs_f64());
    Ok(report)
}

pub struct ScanArgs {
    pub n_mode: NMode,
    pub window: Option<Window<f64>>,
    pub resolution: (usize, usize),
    pub theta_samples: usize,
}

impl ScanArgs {
    fn window_for(&self, p: &Polygon) -> Window<f64> {
        self.window.unwrap_or_else(|| Window::around(p, 2.0))
    }

    fn record(&self, report: &mut RunReport, window: &Window<f64>) {
        report
            .param("n", mode_name(self.n_mode))
            .param("window", format!("{},{},{},{}", window.x0, window.y0, window.x1, window.y1))
            .param("resolution", format!("{}x{}", self.resolution.0, self.resolution.1))
            .param("theta_samples", self.theta_samples);
    }

    fn scan(&self, p: &Polygon) -> Result<fairfan_core::Terrain, CliError> {
        scan_terrain(p, self.n_mode, self.window_for(p), self.resolution, self.theta_samples).map_err(invalid)
    }
}

pub fn terrain(poly: &Loaded, a: &ScanArgs) -> Result<String, CliError> {
    Ok(write_grid(&a.scan(&poly.polygon)?))
}

pub struct MinimaArgs {
    pub scan: ScanArgs,
    /// A saved grid file to use instead of scanning.
    pub grid: Option<String>,
    pub min_depth: f64,
    pub exact: bool,
}

/// Scans, keeps the significant grid minima, refines them and attaches the
/// witness of the best one.
pub fn minima(poly: &Loaded, a: &MinimaArgs) -> Result<(RunReport, fairfan_core::Terrain), CliError> {
    let start = Instant::now();
    let p = &poly.polygon;
    if !(a.min_depth >= 0.0) {
        return Err(invalid("--min-depth must be non-negative"));
    }
    let mode = theta_mode(a.exact, a.scan.theta_samples)?;
    let t = match &a.grid {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{path}: {e}")))?;
            parse_grid(&text)?.cast::<f64>()
        }
        None => a.scan.scan(p)?,
    };
    let ms = terrain_minima(p, &t, a.min_depth, mode).map_err(invalid)?;
    let mut report = RunReport::new("minima", &poly.name, p);
    let scan = ScanArgs {
        n_mode: t.n_mode,
        window: Some(t.window),
        resolution: (t.cols, t.rows),
        theta_samples: t.theta_samples,
    };
    scan.record(&mut report, &t.window);
    if let Some(path) = &a.grid {
        report.param("grid", path);
    }
    report.param("min_depth", a.min_depth);
    report.minima = ms.iter().map(MinimumEntry::from).collect();
    if let (NMode::Finite(n), Some(best)) = (t.n_mode, ms.iter().find(|m| m.value.is_finite())) {
        report.value = Some(best.value.get().into());
        report.witness = witness_partition(p, best.location, n, mode).as_ref().map(WitnessEntry::from);
    }
    report.elapsed_seconds = Num::new(start.elapsed().as_secs_f64());
    Ok((report, t))
}

pub struct BestArgs {
    pub n: usize,
    pub strategy: Strategy,
    pub resolution: (usize, usize),
    pub theta_samples: usize,
}

pub fn best(poly: &Loaded, a: &BestArgs) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let p = &poly.polygon;
    let cfg = SearchConfig {
        resolution: a.resolution,
        theta_samples: a.theta_samples,
        ..SearchConfig::default()
    };
    let (m, part) = fairest_fan(p, a.n, a.strategy, &cfg).map_err(invalid)?;
    let mut report = RunReport::new("best", &poly.name, p);
    report
        .param("n", a.n)
        .param("strategy", format!("{:?}", a.strategy).to_lowercase())
        .param("resolution", format!("{}x{}", a.resolution.0, a.resolution.1))
        .param("theta_samples", a.theta_samples);
    report.value = Some(m.value.get().into());
    report.minima = vec![MinimumEntry::from(&m)];
    report.witness = Some(WitnessEntry::from(&part));
    report.elapsed_seconds = Num::new(start.elapsed().as_secs_f64());
    Ok(report)
}

pub struct PerfectArgs {
    pub n: usize,
    pub seed: Option<Point>,
    pub tol: f64,
}

pub fn perfect(poly: &Loaded, a: &PerfectArgs) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let p = &poly.polygon;
    if !(a.tol >= 0.0) {
        return Err(invalid("--tol must be non-negative"));
    }
    let seed = a.seed.unwrap_or_else(|| p.centroid());
    let mut report = RunReport::new("perfect", &poly.name, p);
    report
        .param("n", a.n)
        .param("point", format!("{},{}", seed.x, seed.y))
        .param("tol", a.tol);
    let found = find_perfect_fan(p, a.n, seed, a.tol);
    report.found = Some(found.is_some());
    if let Some((m, part)) = found {
        report.value = Some(m.value.get().into());
        report.minima = vec![MinimumEntry::from(&m)];
        report.witness = Some(WitnessEntry::from(&part));
    }
    report.elapsed_seconds = Num::new(start.elapsed().as_secs_f64());
    Ok(report)
}

pub fn candidates(poly: &Loaded) -> RunReport {
    let start = Instant::now();
    let mut report = RunReport::new("candidates", &poly.name, &poly.polygon);
    report.candidates = candidate_entries(&asymptotic_candidates(&poly.polygon));
    report.elapsed_seconds = Num::new(start.elapsed().as_secs_f64());
    report
}

/// Inputs of one reproduced figure.
pub struct Figure {
    pub id: &'static str,
    pub polygon: &'static str,
    pub n: usize,
    pub window: Window<f64>,
    pub resolution: (usize, usize),
    pub theta_samples: usize,
    /// `(seed, tol)` for a perfect-fan search reported alongside the minima.
    pub perfect: Option<(Point, f64)>,
}

pub const FIGURE_IDS: [&str; 6] = ["fig1a", "fig1b", "fig1c", "fig2a", "fig2b", "fig3"];

pub fn figure(id: &str) -> Option<Figure> {
    let ellipse = Window::new(-12.0, -9.0, 12.0, 9.0);
    let hexagon = Window::new(-20.0, -15.0, 25.0, 25.0);
    let fig = |id, polygon, n, window, resolution, theta_samples| Figure {
        id,
        polygon,
        n,
        window,
        resolution,
        theta_samples,
        perfect: None,
    };
    Some(match id {
        "fig1a" => fig("fig1a", "ellipse12", 3, ellipse, (160, 120), 32),
        "fig1b" => fig("fig1b", "ellipse12", 10, ellipse, (160, 120), 32),
        "fig1c" => fig("fig1c", "ellipse12", 100, ellipse, (80, 60), 24),
        "fig2a" => fig("fig2a", "hexagon", 700, hexagon, (80, 72), 16),
        "fig2b" => fig("fig2b", "hexagon", 700, Window::new(-5.0, -1.0, 12.0, 13.0), (80, 72), 16),
        "fig3" => Figure {
            perfect: Some((Point::new(5.0, 9.3), 1e-3)),
            ..fig("fig3", "triangle", 6, Window::new(-5.0, -5.0, 15.0, 14.0), (120, 114), 32)
        },
        _ => return None,
    })
}

pub struct ReproduceArgs {
    pub figure: String,
    pub out_dir: String,
    pub resolution: Option<(usize, usize)>,
    pub theta_samples: Option<usize>,
}

/// Writes `<id>_polygon.json`, `<id>.dat`, `<id>_report.json` and `<id>.gp`
/// into the output directory. Returns the report.
pub fn reproduce(a: &ReproduceArgs) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let fig = figure(&a.figure).ok_or_else(|| {
        invalid(format!("unknown figure {:?}; expected one of {}", a.figure, FIGURE_IDS.join(", ")))
    })?;
    let poly = Loaded {
        name: fig.polygon.to_string(),
        polygon: builtin(fig.polygon).expect("figure polygon is built in"),
    };
    let args = MinimaArgs {
        scan: ScanArgs {
            n_mode: NMode::Finite(fig.n),
            window: Some(fig.window),
            resolution: a.resolution.unwrap_or(fig.resolution),
            theta_samples: a.theta_samples.unwrap_or(fig.theta_samples),
        },
        grid: None,
        min_depth: fairfan_core::search::DEFAULT_MIN_DEPTH,
        exact: true,
    };
    let (mut report, terrain) = minima(&poly, &args)?;
    report.command = "reproduce".into();
    report.param("figure", fig.id);
    if let Some((seed, tol)) = fig.perfect {
        report.param("perfect_seed", format!("{},{}", seed.x, seed.y)).param("tol", tol);
        let found = find_perfect_fan(&poly.polygon, fig.n, seed, tol);
        report.found = Some(found.is_some());
        if let Some((m, part)) = found {
            report.value = Some(m.value.get().into());
            report.minima.insert(0, MinimumEntry::from(&m));
            report.witness = Some(WitnessEntry::from(&part));
        }
    }
    report.elapsed_seconds = Num::new(start.elapsed().as_secs_f64());

    let dir = Path::new(&a.out_dir);
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let doc = PolygonFile::from_polygon(fig.polygon, &poly.polygon);
    let grid_name = format!("{}.dat", fig.id);
    let title = format!("{} n={}", fig.polygon, fig.n);
    let files = [
        (format!("{}_polygon.json", fig.id), serde_json::to_string_pretty(&doc).expect("polygon serializes") + "\n"),
        (grid_name.clone(), write_grid(&terrain)),
        (format!("{}_report.json", fig.id), report.to_json()),
        (
            format!("{}.gp", fig.id),
            gnuplot_script(&grid_name, &doc.vertices, &title, &format!("{}.png", fig.id)),
        ),
    ];
    for (name, text) in files {
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(report)
}
