//! Command-line surface: argument types, JSON report builders and the
//! dispatcher used by the `zalcman` binary.
//!
//! Every report carries its resolved configuration under `config`. Complex
//! numbers are written as `{"re": …, "im": …}`. Exit codes: 0 success,
//! 1 computation error, 2 usage or hypothesis error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal_algebra::{maximize_g, unconstrained_grid_max, UnconstrainedDiagnostic};
use crate::families::koebe_rotation;
use crate::functionals::{lambda_thresholds, zalcman_bound, zalcman_value, ZalcmanSpec};
use crate::loewner::DrivingFunction;
use crate::quaddiff::{
    critical_points, emit_svg, gamma_trajectories, half_plane_check, real_axis_report, write_csv,
    QuadDiffT1, SvgAnnotations, TraceConfig,
};
use crate::schiffer::{
    center_imaginary, check_reciprocal_symmetry, double_root_fit, matching_residuals,
    relation_check, rhs_polynomial,
};
use crate::search::{lambda_sweep_with, optimize_with, SearchOptions, SweepRow};

/// Relative tolerance for declaring the bound attained.
pub const ATTAINED_TOL: f64 = 1e-9;

/// Columns of the sweep CSV.
pub const SWEEP_CSV_HEADER: [&str; 4] = ["lambda", "empiricalMax", "conjecturedBound", "gap"];

#[derive(Debug, Parser)]
#[command(
    name = "zalcman",
    version,
    about = "Generalized Zalcman functionals on univalent functions"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Functional of a Koebe rotation against the conjectured bound.
    Eval(EvalArgs),
    /// Schaeffer–Spencer right-hand side of a Koebe rotation and its double-zero factorization.
    Schiffer(SchifferArgs),
    /// Maximum of the trigonometric reduction G.
    Gmax,
    /// Real-axis and half-plane diagnostics of the quadratic differential.
    Qd(QdArgs),
    /// Multistart search over Loewner drivings.
    Search(SearchArgs),
    /// λ sweep of the search against the conjectured bound.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EvalArgs {
    /// Rotation angle in radians.
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    pub lambda: f64,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub m: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SchifferArgs {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub theta: f64,
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    pub lambda: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QdArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a2re: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub a2im: f64,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Trajectory step bound.
    #[arg(long, default_value_t = 1e-3)]
    pub ds: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchArgs {
    #[arg(long, default_value_t = 3.0, allow_hyphen_values = true)]
    pub lambda: f64,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    #[arg(long = "K", default_value_t = 4)]
    #[serde(rename = "K")]
    pub k: usize,
    #[arg(long, default_value_t = 16)]
    pub starts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    /// Comma-separated λ values.
    #[arg(
        long,
        value_delimiter = ',',
        required = true,
        allow_hyphen_values = true
    )]
    pub lambda_grid: Vec<f64>,
    #[arg(long = "K", default_value_t = 4)]
    #[serde(rename = "K")]
    pub k: usize,
    #[arg(long, default_value_t = 16)]
    pub starts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// `{"re", "im"}` view of a complex number.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JsonComplex {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for JsonComplex {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

fn jc(zs: &[Complex64]) -> Vec<JsonComplex> {
    zs.iter().map(|&z| z.into()).collect()
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EvalReport {
    pub config: EvalArgs,
    pub value: JsonComplex,
    pub modulus: f64,
    pub bound: f64,
    pub attained: bool,
    pub warnings: Vec<String>,
}

pub fn eval_report(args: &EvalArgs) -> Result<EvalReport> {
    let spec = ZalcmanSpec::new(args.lambda, args.n, args.m)?;
    let f = koebe_rotation(args.theta, spec.top_index().max(2))?;
    let value = zalcman_value(&f, &spec)?;
    let bound = zalcman_bound(&spec);
    let modulus = value.norm();
    let mut warnings = Vec::new();
    let low = lambda_thresholds(args.n, args.m).low;
    if args.lambda < low {
        warnings.push(format!(
            "lambda {} is below (n+m-1)/(nm) = {low}; the conjectured bound is not meaningful here",
            args.lambda
        ));
    }
    Ok(EvalReport {
        config: args.clone(),
        value: value.into(),
        modulus,
        bound,
        attained: bound > 0.0 && (modulus - bound).abs() <= ATTAINED_TOL * bound.max(1.0),
        warnings,
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SchifferReport {
    pub config: SchifferArgs,
    #[serde(rename = "P")]
    pub p: JsonComplex,
    #[serde(rename = "Q")]
    pub q: JsonComplex,
    #[serde(rename = "R")]
    pub r: JsonComplex,
    #[serde(rename = "S")]
    pub s: JsonComplex,
    #[serde(rename = "T")]
    pub t: JsonComplex,
    pub symmetry_residual: f64,
    /// `|Im R|`; nonzero when the functional value is not real.
    pub center_imaginary: f64,
    #[serde(rename = "E")]
    pub e: JsonComplex,
    /// `[A, B, C, D]`.
    pub quartic_q: Vec<JsonComplex>,
    pub double_zero_residual: f64,
    pub matching_residuals: [f64; 5],
    /// `[|D − conj(B)A|, |C − conj(C)A|]`.
    pub relation_residuals: [f64; 2],
}

pub fn schiffer_report(args: &SchifferArgs) -> Result<SchifferReport> {
    let f = koebe_rotation(args.theta, 4)?;
    let g = rhs_polynomial(args.lambda, &f)?;
    let symmetry_residual = check_reciprocal_symmetry(&g)?;
    let center_im = center_imaginary(&g);
    let fac = double_root_fit(&g)?;
    let (dr, cr) = relation_check(&fac);
    Ok(SchifferReport {
        config: args.clone(),
        p: g.coeff(-2).into(),
        q: g.coeff(-1).into(),
        r: g.coeff(0).into(),
        s: g.coeff(1).into(),
        t: g.coeff(2).into(),
        symmetry_residual,
        center_imaginary: center_im,
        e: fac.e.into(),
        quartic_q: jc(&fac.q),
        double_zero_residual: fac.residual,
        matching_residuals: matching_residuals(&fac, &f, args.lambda)?,
        relation_residuals: [dr, cr],
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GmaxConfig {
    pub unconstrained_grid: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GmaxReport {
    pub config: GmaxConfig,
    pub g_max: f64,
    pub bound: f64,
    pub critical_r: f64,
    pub interior_value: f64,
    pub argmax_r: f64,
    pub argmax_phi: f64,
    /// Off-manifold scan; its maximum is not a bound.
    pub unconstrained: UnconstrainedDiagnostic,
}

pub fn gmax_report() -> GmaxReport {
    let grid = 200;
    let g = maximize_g();
    GmaxReport {
        config: GmaxConfig {
            unconstrained_grid: grid,
        },
        g_max: g.g_max,
        bound: g.bound,
        critical_r: g.critical_r,
        interior_value: g.interior_value,
        argmax_r: g.argmax_r,
        argmax_phi: g.argmax_phi,
        unconstrained: unconstrained_grid_max(grid, grid),
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TrajectorySummary {
    pub termination: &'static str,
    pub points: usize,
    pub start: JsonComplex,
    pub end: JsonComplex,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QdReport {
    pub config: QdArgs,
    pub xi_star: f64,
    pub re_at_xi_star: f64,
    pub re_direct: f64,
    /// Sign changes of `Im Q` on the negative and positive real half-lines.
    pub im_sign_changes: [usize; 2],
    pub zeros: Vec<JsonComplex>,
    pub trajectories: Vec<TrajectorySummary>,
    pub crossings: usize,
    pub verdict: bool,
}

pub fn qd_report(args: &QdArgs) -> Result<QdReport> {
    let qd = QuadDiffT1::new(Complex64::new(args.a2re, args.a2im))?;
    let axis = real_axis_report(&qd);
    let cfg = TraceConfig {
        ds: args.ds,
        ..TraceConfig::default()
    };
    let lines = gamma_trajectories(&qd, &cfg)?;
    let check = half_plane_check(&lines, 1e-3);
    let zeros = critical_points(&qd).zeros;
    if let Some(path) = &args.svg {
        let notes = SvgAnnotations {
            zeros: zeros.to_vec(),
            origin_pole: true,
            xi_star: Some(axis.xi_star),
        };
        emit_svg(&lines, &notes, path)?;
    }
    if let Some(path) = &args.csv {
        write_csv(&lines, path)?;
    }
    Ok(QdReport {
        config: args.clone(),
        xi_star: axis.xi_star,
        re_at_xi_star: axis.re_at_xi_star,
        re_direct: axis.re_direct,
        im_sign_changes: [axis.im_sign_changes.0, axis.im_sign_changes.1],
        zeros: jc(&zeros),
        trajectories: lines
            .iter()
            .map(|l| TrajectorySummary {
                termination: l.termination.as_str(),
                points: l.points.len(),
                start: l.points[0].into(),
                end: (*l.points.last().expect("nonempty")).into(),
            })
            .collect(),
        crossings: check.crossings,
        verdict: check.verdict,
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchConfig {
    #[serde(flatten)]
    pub args: SearchArgs,
    pub options: SearchOptions,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SearchReport {
    pub config: SearchConfig,
    pub best_value: f64,
    pub conjectured_bound: f64,
    pub best_driving: DrivingFunction,
    pub best_coeffs: Vec<JsonComplex>,
    pub starts: usize,
    pub evals: usize,
    pub seed: u64,
    pub red_flag: Option<crate::search::RedFlag>,
    pub failed_starts: Vec<String>,
}

pub fn search_report(args: &SearchArgs) -> Result<SearchReport> {
    let spec = ZalcmanSpec::new(args.lambda, args.n, args.m)?;
    let options = SearchOptions {
        dt: args.dt,
        ..SearchOptions::default()
    };
    let res = optimize_with(spec, args.k, args.starts, args.seed, &options)?;
    Ok(SearchReport {
        config: SearchConfig {
            args: args.clone(),
            options,
        },
        best_value: res.best_value,
        conjectured_bound: zalcman_bound(&spec),
        best_driving: res.best_driving,
        best_coeffs: jc(res.best_coeffs.as_slice()),
        starts: res.starts,
        evals: res.evals,
        seed: res.seed,
        red_flag: res.red_flag,
        failed_starts: res.failed_starts,
    })
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepReport {
    pub config: SweepConfig,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepConfig {
    #[serde(flatten)]
    pub args: SweepArgs,
    pub options: SearchOptions,
}

pub fn sweep_report(args: &SweepArgs) -> Result<SweepReport> {
    let options = SearchOptions {
        dt: args.dt,
        ..SearchOptions::default()
    };
    let rows = lambda_sweep_with(
        args.n,
        args.m,
        &args.lambda_grid,
        args.k,
        args.starts,
        args.seed,
        &options,
    )?;
    if let Some(path) = &args.out {
        write_sweep_csv(&rows, path)?;
    }
    Ok(SweepReport {
        config: SweepConfig {
            args: args.clone(),
            options,
        },
        rows,
    })
}

pub fn write_sweep_csv(rows: &[SweepRow], path: impl AsRef<std::path::Path>) -> Result<()> {
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(SWEEP_CSV_HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record([
            r.lambda.to_string(),
            r.empirical_max.to_string(),
            r.conjectured_bound.to_string(),
            r.gap.to_string(),
        ])
        .map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Io(std::io::Error::other(format!("{other:?}"))),
    }
}

/// 2 for bad input or violated hypotheses, 1 for everything else.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Domain(_) | Error::Hypothesis(_) | Error::OrderMismatch { .. } => 2,
        _ => 1,
    }
}

fn to_json<T: Serialize>(report: &T) -> String {
    serde_json::to_string_pretty(report).expect("reports serialize")
}

/// Runs one command and returns the JSON it prints.
pub fn execute(command: &Command) -> Result<String> {
    Ok(match command {
        Command::Eval(a) => {
            let r = eval_report(a)?;
            for w in &r.warnings {
                eprintln!("warning: {w}");
            }
            to_json(&r)
        }
        Command::Schiffer(a) => to_json(&schiffer_report(a)?),
        Command::Gmax => to_json(&gmax_report()),
        Command::Qd(a) => to_json(&qd_report(a)?),
        Command::Search(a) => {
            let r = search_report(a)?;
            if let Some(flag) = &r.red_flag {
                eprintln!(
                    "RED FLAG: best value {} exceeds the conjectured bound {} by {}",
                    r.best_value, flag.bound, flag.excess
                );
            }
            let json = to_json(&r);
            if let Some(path) = &a.out {
                std::fs::write(path, format!("{json}\n"))?;
            }
            json
        }
        Command::Sweep(a) => to_json(&sweep_report(a)?),
    })
}

/// Parses `args` (program name first), runs the command, prints JSON to
/// stdout and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(json) => {
            let mut out = std::io::stdout().lock();
            let _ = writeln!(out, "{json}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
