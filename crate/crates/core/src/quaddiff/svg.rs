use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use super::TrajectoryPolyline;
use crate::error::{Error, Result};

/// Extra marks drawn on top of the trajectories.
#[derive(Debug, Clone, Default)]
pub struct SvgAnnotations {
    pub zeros: Vec<Complex64>,
    /// Draw the simple pole at the origin.
    pub origin_pole: bool,
    /// `6x₂`, marked on the real axis.
    pub xi_star: Option<f64>,
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 0.08;

/// Renders the polylines as an SVG 1.1 document. Output depends only on the inputs.
pub fn render_svg(polylines: &[TrajectoryPolyline], notes: &SvgAnnotations) -> Result<String> {
    if polylines.iter().all(|p| p.points.is_empty()) {
        return Err(Error::domain("no polylines to draw"));
    }
    let mut pts = polylines
        .iter()
        .flat_map(|p| p.points.iter().copied())
        .collect::<Vec<_>>();
    pts.extend(notes.zeros.iter().copied());
    pts.push(Complex64::new(0.0, 0.0));
    if let Some(x) = notes.xi_star {
        pts.push(Complex64::new(x, 0.0));
    }
    let (mut x0, mut x1, mut y0, mut y1) = pts.iter().fold(
        (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        ),
        |(a, b, c, d), p| (a.min(p.re), b.max(p.re), c.min(p.im), d.max(p.im)),
    );
    let pad_x = (x1 - x0).max(1e-9) * MARGIN;
    let pad_y = (y1 - y0).max(1e-9) * MARGIN;
    x0 -= pad_x;
    x1 += pad_x;
    y0 -= pad_y;
    y1 += pad_y;
    let scale = (WIDTH / (x1 - x0)).min(HEIGHT / (y1 - y0));
    // screen y grows downward
    let map = |p: Complex64| ((p.re - x0) * scale, (y1 - p.im) * scale);
    let (w, h) = ((x1 - x0) * scale, (y1 - y0) * scale);

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.3}" height="{h:.3}" viewBox="0 0 {w:.3} {h:.3}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let (ax0, ay) = map(Complex64::new(x0, 0.0));
    let (ax1, _) = map(Complex64::new(x1, 0.0));
    let _ = writeln!(
        s,
        r##"<line x1="{ax0:.3}" y1="{ay:.3}" x2="{ax1:.3}" y2="{ay:.3}" stroke="#888888" stroke-width="1"/>"##
    );

    for (k, line) in polylines.iter().enumerate() {
        if line.points.is_empty() {
            continue;
        }
        let mut d = String::new();
        for (i, p) in line.points.iter().enumerate() {
            let (x, y) = map(*p);
            let _ = write!(d, "{}{x:.3} {y:.3}", if i == 0 { "M" } else { " L" });
        }
        let _ = writeln!(
            s,
            r##"<path id="trajectory-{k}" d="{d}" fill="none" stroke="#1f4e9c" stroke-width="1.5"/>"##
        );
    }

    for z in &notes.zeros {
        let (x, y) = map(*z);
        let _ = writeln!(
            s,
            r##"<circle class="zero" cx="{x:.3}" cy="{y:.3}" r="4" fill="#d62728"/>"##
        );
    }
    if notes.origin_pole {
        let (x, y) = map(Complex64::new(0.0, 0.0));
        let _ = writeln!(
            s,
            r##"<circle class="pole" cx="{x:.3}" cy="{y:.3}" r="4" fill="none" stroke="#000000" stroke-width="1.5"/>"##
        );
    }
    if let Some(xs) = notes.xi_star {
        let (x, y) = map(Complex64::new(xs, 0.0));
        let _ = writeln!(
            s,
            r##"<rect class="xi-star" x="{:.3}" y="{:.3}" width="6" height="6" fill="#2ca02c"/>"##,
            x - 3.0,
            y - 3.0
        );
        let _ = writeln!(
            s,
            r#"<text x="{:.3}" y="{:.3}" font-size="12" font-family="sans-serif">ξ = 6x₂ = {xs:.4}</text>"#,
            x + 6.0,
            y - 6.0
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn emit_svg(
    polylines: &[TrajectoryPolyline],
    notes: &SvgAnnotations,
    path: impl AsRef<Path>,
) -> Result<()> {
    let doc = render_svg(polylines, notes)?;
    std::fs::write(path, doc)?;
    Ok(())
}

/// Writes `index,re,im` rows; `index` restarts at 0 for each polyline.
pub fn write_csv(polylines: &[TrajectoryPolyline], path: impl AsRef<Path>) -> Result<()> {
    let mut s = String::from("index,re,im\n");
    for line in polylines {
        for (i, p) in line.points.iter().enumerate() {
            let _ = writeln!(s, "{i},{:e},{:e}", p.re, p.im);
        }
    }
    std::fs::write(path, s)?;
    Ok(())
}
