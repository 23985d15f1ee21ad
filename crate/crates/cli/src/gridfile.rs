//! Terrain grid files in the layout gnuplot's `splot` reads.
//!
//! One `x y value` line per cell, rows by ascending `y`, a blank line
//! between rows, `#` header lines for the metadata. Values are stored as
//! `f32` at 9 significant digits, which round-trips `f32` exactly.

use std::fmt::Write as _;

use fairfan_core::search::{NMode, Terrain, Window};
use fairfan_core::FairnessValue;

use crate::CliError;

/// `printf("%.*g", precision, v)`, with `inf` for infinities.
pub fn format_g(v: f64, precision: usize) -> String {
    if v.is_nan() {
        return "nan".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let p = precision.max(1);
    let sci = format!("{:.*e}", p - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= p as i32 {
        let m = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (p as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// The grid file for `terrain`, values narrowed to `f32`.
pub fn write_grid(terrain: &Terrain<f64>) -> String {
    let w = &terrain.window;
    let mut out = String::new();
    out.push_str("# fairfan terrain\n");
    let _ = writeln!(out, "# window {} {} {} {}", w.x0, w.y0, w.x1, w.y1);
    let _ = writeln!(out, "# resolution {} {}", terrain.cols, terrain.rows);
    match terrain.n_mode {
        NMode::Finite(n) => {
            let _ = writeln!(out, "# n {n}");
        }
        NMode::Asymptotic => out.push_str("# n asymptotic\n"),
    }
    let _ = writeln!(out, "# theta_samples {}", terrain.theta_samples);
    for row in 0..terrain.rows {
        if row > 0 {
            out.push('\n');
        }
        for col in 0..terrain.cols {
            let p = terrain.point(col, row);
            let v = terrain.get(col, row).get() as f32;
            let _ = writeln!(out, "{} {} {}", format_g(p.x, 9), format_g(p.y, 9), format_g(f64::from(v), 9));
        }
    }
    out
}

fn bad(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Invalid(format!("grid line {line}: {msg}"))
}

fn numbers<T: std::str::FromStr>(line: usize, words: &[&str], count: usize) -> Result<Vec<T>, CliError> {
    if words.len() != count {
        return Err(bad(line, format!("expected {count} fields")));
    }
    words.iter().map(|w| w.parse().map_err(|_| bad(line, format!("bad number {w:?}")))).collect()
}

/// Parses a grid file back into the `f32` terrain it was written from.
pub fn parse_grid(text: &str) -> Result<Terrain<f32>, CliError> {
    let mut window = None;
    let mut resolution = None;
    let mut n_mode = None;
    let mut theta_samples = 0;
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        if let Some(header) = raw.strip_prefix('#') {
            let words: Vec<&str> = header.split_whitespace().collect();
            match words.split_first() {
                Some((&"window", rest)) => {
                    let v: Vec<f64> = numbers(line, rest, 4)?;
                    window = Some(Window::new(v[0] as f32, v[1] as f32, v[2] as f32, v[3] as f32));
                }
                Some((&"resolution", rest)) => {
                    let v: Vec<usize> = numbers(line, rest, 2)?;
                    resolution = Some((v[0], v[1]));
                }
                Some((&"n", [word])) if *word == "asymptotic" => n_mode = Some(NMode::Asymptotic),
                Some((&"n", rest)) => n_mode = Some(NMode::Finite(numbers::<usize>(line, rest, 1)?[0])),
                Some((&"theta_samples", rest)) => theta_samples = numbers::<usize>(line, rest, 1)?[0],
                _ => {}
            }
            continue;
        }
        let words: Vec<&str> = raw.split_whitespace().collect();
        let v: Vec<f32> = numbers(line, &words, 3)?;
        values.push(FairnessValue::new(v[2]));
    }
    let window = window.ok_or_else(|| CliError::Invalid("grid: missing window header".into()))?;
    let (cols, rows) = resolution.ok_or_else(|| CliError::Invalid("grid: missing resolution header".into()))?;
    let n_mode = n_mode.ok_or_else(|| CliError::Invalid("grid: missing n header".into()))?;
    if values.len() != cols * rows {
        return Err(CliError::Invalid(format!(
            "grid: {} values for a {cols}x{rows} grid",
            values.len()
        )));
    }
    Ok(Terrain {
        window,
        cols,
        rows,
        n_mode,
        theta_samples,
        values,
    })
}

/// A gnuplot script drawing `grid` as a contour map with `polygon` on top.
pub fn gnuplot_script(grid: &str, polygon: &[[f64; 2]], title: &str, out_png: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "set terminal pngcairo size 1000,800");
    let _ = writeln!(s, "set output '{out_png}'");
    let _ = writeln!(s, "set title '{title}'");
    s.push_str("set view map\nset size ratio -1\nset contour base\nset cntrparam levels auto 20\n");
    s.push_str("unset surface\nset datafile missing 'inf'\n");
    s.push_str("set table $contours\n");
    let _ = writeln!(s, "splot '{grid}' using 1:2:3 with lines");
    s.push_str("unset table\n");
    s.push_str("$polygon << EOD\n");
    for p in polygon.iter().chain(polygon.first()) {
        let _ = writeln!(s, "{} {}", p[0], p[1]);
    }
    s.push_str("EOD\n");
    s.push_str("plot $contours using 1:2 with lines lc 'gray' notitle, \\\n");
    s.push_str("     $polygon using 1:2 with lines lw 2 lc 'black' notitle\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use fairfan_core::search::scan_terrain;
    use fairfan_core::shapes;

    #[test]
    fn matches_printf_g() {
        let cases = [
            (1.0, "1"),
            (0.5, "0.5"),
            (1.0937612345678, "1.09376123"),
            (123456789.0, "123456789"),
            (1234567890.0, "1.23456789e+09"),
            (0.0001, "0.0001"),
            (0.00001234, "1.234e-05"),
            (-2.5, "-2.5"),
            (0.0, "0"),
            (f64::INFINITY, "inf"),
        ];
        for (v, s) in cases {
            assert_eq!(format_g(v, 9), s, "{v}");
        }
    }

    #[test]
    fn nine_digits_round_trip_f32() {
        for &v in &[1.0f32, 1.1, 1.0000001, 3.4028235e38, 1e-30, 7.123_456_7, 0.33333334] {
            let s = format_g(f64::from(v), 9);
            assert_eq!(s.parse::<f32>().unwrap().to_bits(), v.to_bits(), "{s}");
        }
    }

    #[test]
    fn terrain_round_trips_bit_exactly() {
        let hex = shapes::hexagon::<f64>();
        let t = scan_terrain(&hex, NMode::Asymptotic, Window::new(-20.0, -15.0, 25.0, 25.0), (17, 13), 0).unwrap();
        assert!(t.values.iter().any(|v| !v.is_finite()) && t.values.iter().any(|v| v.is_finite()));
        let parsed = parse_grid(&write_grid(&t)).unwrap();
        assert_eq!(parsed, t.cast::<f32>());
        let sq = shapes::unit_square::<f64>();
        let t = scan_terrain(&sq, NMode::Finite(4), Window::new(0.0, 0.0, 1.0, 1.0), (8, 8), 8).unwrap();
        let parsed = parse_grid(&write_grid(&t)).unwrap();
        for (a, b) in parsed.values.iter().zip(t.cast::<f32>().values) {
            assert_eq!(a.get().to_bits(), b.get().to_bits());
        }
    }

    #[test]
    fn layout_has_blank_row_separators() {
        let sq = shapes::unit_square::<f64>();
        let t = scan_terrain(&sq, NMode::Finite(4), Window::new(0.0, 0.0, 1.0, 1.0), (4, 3), 8).unwrap();
        let text = write_grid(&t);
        let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
        assert_eq!(body.iter().filter(|l| l.is_empty()).count(), 2);
        assert_eq!(body.iter().filter(|l| !l.is_empty()).count(), 12);
        let ys: Vec<f64> = body
            .iter()
            .filter(|l| !l.is_empty())
            .map(|l| l.split_whitespace().nth(1).unwrap().parse().unwrap())
            .collect();
        assert!(ys.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn rejects_short_grids() {
        let text = "# window 0 0 1 1\n# resolution 2 2\n# n 3\n0.25 0.25 1\n";
        assert!(matches!(parse_grid(text), Err(CliError::Invalid(_))));
    }
}
