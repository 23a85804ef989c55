// Critical trajectories of the quadratic differential for a given a₂,
// written as SVG and CSV. Pass an output directory, or the system temp
// directory is used.

use zalcman::quaddiff::{
    critical_points, emit_svg, gamma_trajectories, half_plane_check, real_axis_report, write_csv,
    QuadDiffT1, SvgAnnotations, TraceConfig,
};
use zalcman::Complex64;

pub fn run_example() -> zalcman::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(std::path::PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    let qd = QuadDiffT1::new(Complex64::new(1.0, 1.0))?;

    let axis = real_axis_report(&qd);
    println!("Im Q vanishes on the real axis at xi = {}", axis.xi_star);
    println!(
        "Re Q there: {} (closed form {})",
        axis.re_direct, axis.re_at_xi_star
    );

    let lines = gamma_trajectories(&qd, &TraceConfig::default())?;
    for l in &lines {
        println!(
            "trajectory: {} points, {}",
            l.points.len(),
            l.termination.as_str()
        );
    }
    let check = half_plane_check(&lines, 1e-3);
    println!(
        "real-axis crossings: {}, one half-plane: {}",
        check.crossings, check.verdict
    );

    let notes = SvgAnnotations {
        zeros: critical_points(&qd).zeros.to_vec(),
        origin_pole: true,
        xi_star: Some(axis.xi_star),
    };
    let svg = dir.join("zalcman-trajectories.svg");
    emit_svg(&lines, &notes, &svg)?;
    write_csv(&lines, dir.join("zalcman-trajectories.csv"))?;
    println!("wrote {}", svg.display());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
