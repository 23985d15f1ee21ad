//! `fairfan`: equal-area convex fans and their perimeter fairness.
//!
//! Exit codes: 0 on success, 2 for bad arguments or input, 3 for I/O errors.

mod commands;
mod gridfile;
mod polygon_file;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fairfan_core::search::{NMode, Strategy, Window, DEFAULT_MIN_DEPTH};
use fairfan_core::Point;
use thiserror::Error;

use commands::{BestArgs, FanArgs, FvalueArgs, MinimaArgs, PerfectArgs, ReproduceArgs, ScanArgs};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

fn parse_floats<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|w| w.trim().parse::<f64>().map_err(|_| format!("bad number {w:?}")))
        .collect::<Result<_, _>>()?;
    let arr: [f64; N] = v.try_into().map_err(|_| format!("expected {N} comma-separated numbers"))?;
    if arr.iter().all(|x| x.is_finite()) {
        Ok(arr)
    } else {
        Err("numbers must be finite".into())
    }
}

fn parse_point(s: &str) -> Result<Point, String> {
    let [x, y] = parse_floats::<2>(s)?;
    Ok(Point::new(x, y))
}

fn parse_window(s: &str) -> Result<Window<f64>, String> {
    let [x0, y0, x1, y1] = parse_floats::<4>(s)?;
    let w = Window::new(x0, y0, x1, y1);
    if w.is_valid() {
        Ok(w)
    } else {
        Err("window needs x0 < x1 and y0 < y1".into())
    }
}

fn parse_res(s: &str) -> Result<(usize, usize), String> {
    let (c, r) = s.split_once(['x', 'X']).ok_or("expected COLSxROWS")?;
    let c: usize = c.trim().parse().map_err(|_| format!("bad column count {c:?}"))?;
    let r: usize = r.trim().parse().map_err(|_| format!("bad row count {r:?}"))?;
    if c < 2 || r < 2 {
        return Err("resolution must be at least 2x2".into());
    }
    Ok((c, r))
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    Scan,
    Candidates,
    Auto,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Scan => Strategy::Scan,
            StrategyArg::Candidates => Strategy::Candidates,
            StrategyArg::Auto => Strategy::Auto,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    /// Optimize the rotation exactly between vertex events.
    Exact,
    /// Sample `--theta-samples` rotations and refine the best.
    Sampled,
}

#[derive(Debug, Parser)]
#[command(name = "fairfan", version, about = "Equal-area convex fans and their perimeter fairness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct PolygonArg {
    /// Polygon JSON file, or a built-in: square, triangle, hexagon, ellipse12, thin16.
    #[arg(long)]
    polygon: String,
}

#[derive(Debug, Args)]
struct NArgs {
    /// Number of pieces.
    #[arg(long, conflicts_with = "asymptotic")]
    n: Option<usize>,
    /// Use the limit as the number of pieces grows.
    #[arg(long)]
    asymptotic: bool,
}

#[derive(Debug, Args)]
struct GridArgs {
    /// Scan window x0,y0,x1,y1 (default: bounding box inflated 2x).
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    window: Option<Window<f64>>,
    /// Grid resolution COLSxROWS.
    #[arg(long, value_parser = parse_res, default_value = "160x120")]
    res: (usize, usize),
    /// Rotations sampled per grid point.
    #[arg(long, default_value_t = 32)]
    theta_samples: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fairness of the fans from one point.
    Fvalue {
        #[command(flatten)]
        polygon: PolygonArg,
        /// Fan origin X,Y.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Point,
        #[command(flatten)]
        n: NArgs,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        #[arg(long, default_value_t = 32)]
        theta_samples: usize,
    },
    /// One fan partition, as a report.
    Fan {
        #[command(flatten)]
        polygon: PolygonArg,
        /// Fan origin X,Y.
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Option<Point>,
        /// Direction (radians) of parallel cuts, for a fan at infinity.
        #[arg(long, allow_hyphen_values = true)]
        direction: Option<f64>,
        #[arg(long)]
        n: usize,
        /// First ray angle for an interior origin (default: the fairest rotation).
        #[arg(long, allow_hyphen_values = true)]
        theta: Option<f64>,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        #[arg(long, default_value_t = 32)]
        theta_samples: usize,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Sample the fairness function on a grid.
    Terrain {
        #[command(flatten)]
        polygon: PolygonArg,
        #[command(flatten)]
        n: NArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Write the grid here instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
    /// Significant local minima of the terrain, refined.
    Minima {
        #[command(flatten)]
        polygon: PolygonArg,
        #[command(flatten)]
        n: NArgs,
        #[command(flatten)]
        scan: GridArgs,
        /// Minimum basin depth relative to the minimum's value.
        #[arg(long, default_value_t = DEFAULT_MIN_DEPTH)]
        min_depth: f64,
        /// Rotation optimization while refining.
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
        /// Take the terrain from a grid file written by `terrain`.
        #[arg(long, conflicts_with_all = ["window", "res", "theta_samples"])]
        grid: Option<String>,
        #[arg(long)]
        out: Option<String>,
    },
    /// The fairest fan.
    Best {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: StrategyArg,
        #[arg(long, value_parser = parse_res, default_value = "80x60")]
        res: (usize, usize),
        #[arg(long, default_value_t = 32)]
        theta_samples: usize,
        #[arg(long)]
        out: Option<String>,
    },
    /// Search for a perfectly fair fan near a seed point.
    Perfect {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long)]
        n: usize,
        /// Seed X,Y (default: the centroid).
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        point: Option<Point>,
        /// Accept fairness up to 1 + tol.
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        #[arg(long)]
        out: Option<String>,
    },
    /// Where fairest fans sit as the number of pieces grows.
    Candidates {
        #[command(flatten)]
        polygon: PolygonArg,
        #[arg(long)]
        out: Option<String>,
    },
    /// Recompute a figure: polygon, terrain grid, report and gnuplot script.
    Reproduce {
        #[arg(value_parser = commands::FIGURE_IDS)]
        figure: String,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: String,
        /// Override the figure's grid resolution.
        #[arg(long, value_parser = parse_res)]
        res: Option<(usize, usize)>,
        /// Override the figure's rotation samples.
        #[arg(long)]
        theta_samples: Option<usize>,
    },
}

fn emit(out: Option<&str>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{path}: {e}"))),
        None => match std::io::stdout().lock().write_all(text.as_bytes()) {
            // A closed pipe (`| head`) is not a failure.
            Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io(format!("stdout: {e}"))),
            _ => Ok(()),
        },
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Fvalue {
            polygon,
            point,
            n,
            mode,
            theta_samples,
        } => {
            let poly = polygon_file::load(&polygon.polygon)?;
            let args = FvalueArgs {
                point,
                n_mode: commands::n_mode(n.n, n.asymptotic)?,
                exact: mode == ModeArg::Exact,
                theta_samples,
            };
            emit(None, &commands::fvalue(&poly, &args)?)
        }
        Command::Fan {
            polygon,
            point,
            direction,
            n,
            theta,
            mode,
            theta_samples,
            out,
        } => {
            let poly = polygon_file::load(&polygon.polygon)?;
            let args = FanArgs {
                point,
                direction,
                n,
                theta,
                exact: mode == ModeArg::Exact,
                theta_samples,
            };
            emit(out.as_deref(), &commands::fan(&poly, &args)?.to_json())
        }
        Command::Terrain { polygon, n, grid, out } => {
            let poly = polygon_file::load(&polygon.polygon)?;
            let args = ScanArgs {
                n_mode: commands::n_mode(n.n, n.asymptotic)?,
                window: grid.window,
                resolution: grid.res,
                theta_samples: grid.theta_samples,
            };
            emit(out.as_deref(), &commands::terrain(&poly, &args)?)
        }
        Command::Minima {
            polygon,
            n,
            scan,
            min_depth,
            mode,
            grid: grid_file,
            out,
        } => {
            let poly = polygon_file::load(&polygon.polygon)?;
            let args = MinimaArgs {
                scan: ScanArgs {
                    // A grid file carries its own piece count.
                    n_mode: match &grid_file {
                        Some(_) => NMode::Asymptotic,
                        None => commands::n_mode(n.n, n.asymptotic)?,
                    },
                    window: scan.window,
                    resolution: scan.res,
                    theta_samples: scan.theta_samples,
                },
                grid: grid_file,
                min_depth,
                exact: mode == ModeArg::Exact,
            };
            emit(out.as_deref(), &commands::minima(&poly, &args)?.0.to_json())
        }
        Command::Best {
            polygon,
            n,
            strategy,
            res,
            theta_samples,
            out,
        } => {
            let poly = polygon_file::load(&polygon.polygon)?;
            let args = BestArgs {
                n,
                strategy: strategy.into(),
                resolution: res,
                theta_samples,
            };
            emit(out.as_deref(), &commands::best(&poly, &args)?.to_json())
        }
        Command::Perfect {
            polygon,
            n,
            point,
            tol,
            out,
        } => {
            let poly = polygon_file::load(&polygon.polygon)?;
            let args = PerfectArgs { n, seed: point, tol };
            emit(out.as_deref(), &commands::perfect(&poly, &args)?.to_json())
        }
        Command::Candidates { polygon, out } => {
            let poly = polygon_file::load(&polygon.polygon)?;
            emit(out.as_deref(), &commands::candidates(&poly).to_json())
        }
        Command::Reproduce {
            figure,
            out,
            res,
            theta_samples,
        } => {
            let args = ReproduceArgs {
                figure,
                out_dir: out,
                resolution: res,
                theta_samples,
            };
            emit(None, &commands::reproduce(&args)?.to_json())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("fairfan: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
