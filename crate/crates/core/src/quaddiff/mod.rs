//! The quadratic differential attached to extremals of `|2a₂a₃ − a₄|`.
//!
//! At `λ = 2` the Schaeffer–Spencer data reduce to `A₂ = −3a₂²`, `A₃ = a₂`,
//! `A₄ = 1`, so the boundary of an extremal image satisfies
//! `Q*(w)dw² > 0` with `Q*(w) = −w^{−5}(−3a₂²w² + a₂w + 1)`. In the
//! coordinate `ξ = 1/w` this becomes
//!
//! ```text
//! Q(ξ) = −(−3a₂² + a₂ξ + ξ²)/ξ = 3a₂²/ξ − a₂ − ξ,
//! ```
//!
//! with a simple pole at the origin, two simple zeros `a₂(−1 ± √13)/2` and a
//! pole of order five at infinity.

mod svg;
mod trace;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

pub use svg::{emit_svg, write_csv, SvgAnnotations};
pub use trace::{
    trace_from_direction, trace_trajectory, Termination, TraceConfig, TrajectoryPolyline,
};

/// `Q(ξ)dξ²` for a given `a₂`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct QuadDiffT1 {
    a2: Complex64,
}

impl QuadDiffT1 {
    /// Requires `Re a₂ > 0` and `Im a₂ ≠ 0`.
    pub fn new(a2: Complex64) -> Result<Self> {
        if !(a2.re > 0.0) {
            return Err(Error::Hypothesis(format!(
                "Re a2 must be positive, got {}",
                a2.re
            )));
        }
        if a2.im == 0.0 || !a2.im.is_finite() {
            return Err(Error::Hypothesis(format!(
                "Im a2 must be nonzero, got {}",
                a2.im
            )));
        }
        Ok(Self { a2 })
    }

    /// Skips the sign hypotheses; the algebra below is valid for any `a₂ ≠ 0`.
    pub fn without_hypotheses(a2: Complex64) -> Self {
        Self { a2 }
    }

    pub fn a2(&self) -> Complex64 {
        self.a2
    }

    pub(crate) fn eval(&self, xi: Complex64) -> Complex64 {
        3.0 * self.a2 * self.a2 / xi - self.a2 - xi
    }

    pub(crate) fn derivative(&self, xi: Complex64) -> Complex64 {
        -3.0 * self.a2 * self.a2 / (xi * xi) - 1.0
    }

    /// Scale of the picture: escape radius and tolerances are relative to it.
    pub(crate) fn scale(&self) -> f64 {
        self.a2.norm()
    }
}

/// `Q(ξ)`; the origin is a pole.
pub fn q_of_xi(qd: &QuadDiffT1, xi: Complex64) -> Result<Complex64> {
    if xi == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole { xi: xi.to_string() });
    }
    Ok(-(-3.0 * qd.a2 * qd.a2 + qd.a2 * xi + xi * xi) / xi)
}

/// `Q*(w) = −w^{−5}(−3a₂²w² + a₂w + 1)`, the same differential in `w = 1/ξ`.
pub fn q_star_of_w(qd: &QuadDiffT1, w: Complex64) -> Result<Complex64> {
    if w == Complex64::new(0.0, 0.0) {
        return Err(Error::Pole {
            xi: "infinity".into(),
        });
    }
    Ok(-(-3.0 * qd.a2 * qd.a2 * w * w + qd.a2 * w + 1.0) / w.powi(5))
}

/// Real-axis diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RealAxisReport {
    /// `6x₂`, the only real zero of `Im Q`.
    pub xi_star: f64,
    /// Largest deviation of `Im Q(ξ)` from `(6x₂y₂ − y₂ξ)/ξ` on a grid of `[−20, 20] \ {0}`.
    pub im_slope_check: f64,
    /// `−(3y₂² + 39x₂²)/(6x₂)`.
    pub re_at_xi_star: f64,
    /// `Re Q(6x₂)` evaluated directly.
    pub re_direct: f64,
    /// Sign changes of `Im Q` on the negative and positive real half-lines.
    pub im_sign_changes: (usize, usize),
}

const REAL_GRID: usize = 2000;

pub fn real_axis_report(qd: &QuadDiffT1) -> RealAxisReport {
    let (x2, y2) = (qd.a2.re, qd.a2.im);
    let xi_star = 6.0 * x2;

    let mut im_slope_check: f64 = 0.0;
    for k in 0..REAL_GRID {
        let xi = -20.0 + 40.0 * (k as f64 + 0.5) / REAL_GRID as f64;
        let q = qd.eval(Complex64::new(xi, 0.0));
        let closed = (6.0 * x2 * y2 - y2 * xi) / xi;
        im_slope_check = im_slope_check.max((q.im - closed).abs());
    }

    let re_at_xi_star = -(3.0 * y2 * y2 + 39.0 * x2 * x2) / (6.0 * x2);
    let re_direct = qd.eval(Complex64::new(xi_star, 0.0)).re;

    RealAxisReport {
        xi_star,
        im_slope_check,
        re_at_xi_star,
        re_direct,
        im_sign_changes: im_sign_changes(qd, 4000),
    }
}

/// Counts sign changes of `Im Q` on `(−L, 0)` and `(0, L)` with `L` past `6x₂`.
pub fn im_sign_changes(qd: &QuadDiffT1, samples: usize) -> (usize, usize) {
    let reach = (12.0 * qd.a2.re.abs()).max(20.0);
    let count = |sign: f64| {
        let mut changes = 0;
        let mut prev: Option<bool> = None;
        for k in 1..=samples {
            // geometric spacing resolves both the pole and the far field
            let t = reach * (k as f64 / samples as f64).powi(2);
            let im = qd.eval(Complex64::new(sign * t, 0.0)).im;
            if im == 0.0 {
                continue;
            }
            let positive = im > 0.0;
            if let Some(p) = prev {
                if p != positive {
                    changes += 1;
                }
            }
            prev = Some(positive);
        }
        changes
    };
    (count(-1.0), count(1.0))
}

/// Singularities of `Q(ξ)dξ²` on the sphere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Singularities {
    /// Simple zeros `a₂(−1 ± √13)/2`, `+` first.
    pub zeros: [Complex64; 2],
    /// Order of the pole at the origin.
    pub origin_pole_order: u32,
    /// Order of the pole at infinity.
    pub infinity_pole_order: u32,
}

pub fn critical_points(qd: &QuadDiffT1) -> Singularities {
    let root13 = 13f64.sqrt();
    Singularities {
        zeros: [qd.a2 * (-1.0 + root13) / 2.0, qd.a2 * (-1.0 - root13) / 2.0],
        origin_pole_order: 1,
        infinity_pole_order: 5,
    }
}

/// The three directions in which trajectories leave the simple zero `zero`:
/// unit `u` with `Q'(ζ)u³ > 0`.
pub fn critical_directions_at_zero(qd: &QuadDiffT1, zero: Complex64) -> [Complex64; 3] {
    let base = -qd.derivative(zero).arg() / 3.0;
    let third = std::f64::consts::TAU / 3.0;
    [0, 1, 2].map(|k| Complex64::from_polar(1.0, base + k as f64 * third))
}

/// The unique direction in which a trajectory ends at the simple pole at the
/// origin: `3a₂²u > 0`.
pub fn pole_direction(qd: &QuadDiffT1) -> Complex64 {
    let w = (qd.a2 * qd.a2).conj();
    w / w.norm()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct HalfPlaneVerdict {
    pub crossings: usize,
    pub verdict: bool,
}

/// Counts sign changes of `Im ξ` along each polyline, ignoring points within
/// `tol` of the origin.
pub fn half_plane_check(polylines: &[TrajectoryPolyline], tol: f64) -> HalfPlaneVerdict {
    let mut crossings = 0;
    for line in polylines {
        let mut prev: Option<bool> = None;
        for p in &line.points {
            if p.norm() <= tol || p.im == 0.0 {
                continue;
            }
            let upper = p.im > 0.0;
            if let Some(u) = prev {
                if u != upper {
                    crossings += 1;
                }
            }
            prev = Some(upper);
        }
    }
    HalfPlaneVerdict {
        crossings,
        verdict: crossings == 0,
    }
}

/// Critical trajectories on the origin side: the trajectory leaving the pole
/// at the origin and, if it runs into a zero, the two other critical
/// trajectories leaving that zero.
pub fn gamma_trajectories(qd: &QuadDiffT1, cfg: &TraceConfig) -> Result<Vec<TrajectoryPolyline>> {
    let start_radius = cfg.pole_radius * 10.0;
    let dir = pole_direction(qd);
    let first = trace_from_direction(qd, dir * start_radius, dir, cfg)?;
    let mut out = vec![first];
    if let Termination::ReachedZero(idx) = out[0].termination {
        let zero = critical_points(qd).zeros[idx];
        let incoming = out[0].final_direction;
        for d in critical_directions_at_zero(qd, zero) {
            // skip the branch pointing back along the incoming arc
            if (d + incoming).norm() < 0.5 {
                continue;
            }
            let start = zero + d * cfg.zero_radius * 2.0;
            out.push(trace_from_direction(qd, start, d, cfg)?);
        }
    }
    Ok(out)
}
