use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

use num_complex::Complex64;
use serde::Serialize;

use super::{critical_points, QuadDiffT1};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceConfig {
    /// Euclidean step bound.
    pub ds: f64,
    pub max_steps: usize,
    /// Defaults to `50·|a₂|` when `None`.
    pub escape_radius: Option<f64>,
    pub pole_radius: f64,
    pub zero_radius: f64,
    /// Halve the step when the direction turns by more than this.
    pub max_turn: f64,
    /// Smallest step as a fraction of `ds`.
    pub min_step_fraction: f64,
}

impl Default for TraceConfig {
    fn default() -> Self {
        Self {
            ds: 1e-3,
            max_steps: 1_000_000,
            escape_radius: None,
            pole_radius: 1e-4,
            zero_radius: 2e-3,
            max_turn: FRAC_PI_4,
            min_step_fraction: 1.0 / 1024.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    ReachedPole,
    /// Index into [`super::Singularities::zeros`].
    ReachedZero(usize),
    StepLimit,
    EscapedRadius,
}

impl Termination {
    pub fn as_str(&self) -> &'static str {
        match self {
            Termination::ReachedPole => "reached-pole",
            Termination::ReachedZero(_) => "reached-zero",
            Termination::StepLimit => "step-limit",
            Termination::EscapedRadius => "escaped-radius",
        }
    }
}

impl Serialize for Termination {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TrajectoryPolyline {
    pub points: Vec<Complex64>,
    pub termination: Termination,
    /// Unit tangent at the last point, oriented along the trace.
    pub final_direction: Complex64,
}

impl TrajectoryPolyline {
    /// Wraps hand-made points, e.g. for plotting or checks.
    pub fn from_points(points: Vec<Complex64>) -> Self {
        let final_direction = match points.as_slice() {
            [.., a, b] if a != b => (b - a) / (b - a).norm(),
            _ => Complex64::new(1.0, 0.0),
        };
        Self {
            points,
            termination: Termination::StepLimit,
            final_direction,
        }
    }

    pub fn max_step(&self) -> f64 {
        self.points
            .windows(2)
            .map(|w| (w[1] - w[0]).norm())
            .fold(0.0, f64::max)
    }
}

/// Unit tangent of the trajectory through `xi` on the branch closest to `reference`.
fn unit_direction(qd: &QuadDiffT1, xi: Complex64, reference: Complex64) -> Option<Complex64> {
    let q = qd.eval(xi);
    if !(q.norm() > 0.0) || !q.is_finite() {
        return None;
    }
    // Q·v² = 1 for v = 1/√Q
    let v = 1.0 / q.sqrt();
    let v = v / v.norm();
    Some(if (v * reference.conj()).re < 0.0 {
        -v
    } else {
        v
    })
}

/// Traces `Q(ξ)dξ² > 0` from `start`, leaving along `orientation` times the
/// principal tangent `1/√Q(start)`.
pub fn trace_trajectory(
    qd: &QuadDiffT1,
    start: Complex64,
    orientation: i8,
    max_steps: usize,
    ds: f64,
) -> Result<TrajectoryPolyline> {
    let cfg = TraceConfig {
        ds,
        max_steps,
        ..TraceConfig::default()
    };
    let q = qd.eval(start);
    if !(q.norm() > 0.0) || !q.is_finite() {
        return Err(Error::domain(format!("start {start} is a singularity")));
    }
    let principal = 1.0 / q.sqrt();
    let principal = principal / principal.norm();
    let sign = if orientation < 0 { -1.0 } else { 1.0 };
    trace_from_direction(qd, start, principal * sign, &cfg)
}

/// Traces from `start` on the branch whose tangent is closest to `direction`.
pub fn trace_from_direction(
    qd: &QuadDiffT1,
    start: Complex64,
    direction: Complex64,
    cfg: &TraceConfig,
) -> Result<TrajectoryPolyline> {
    if !(cfg.ds > 0.0) {
        return Err(Error::domain("ds must be positive"));
    }
    let zeros = critical_points(qd).zeros;
    if start.norm() == 0.0 || zeros.iter().any(|z| (start - z).norm() < 1e-12) {
        return Err(Error::domain(format!("start {start} is a singularity")));
    }
    let mut d = unit_direction(qd, start, direction)
        .ok_or_else(|| Error::domain(format!("start {start} is a singularity")))?;

    let escape = cfg.escape_radius.unwrap_or(50.0 * qd.scale());
    let min_h = cfg.ds * cfg.min_step_fraction;
    let near_zero = |x: Complex64| zeros.iter().position(|z| (x - z).norm() < cfg.zero_radius);
    // a trace that starts next to a zero must leave its neighbourhood first
    let mut armed = near_zero(start).is_none();

    let mut x = start;
    let mut h = cfg.ds;
    let mut points = vec![x];
    let mut steps = 0;
    let termination = loop {
        if steps >= cfg.max_steps {
            break Termination::StepLimit;
        }
        let stages = (|| {
            let k1 = unit_direction(qd, x, d)?;
            let k2 = unit_direction(qd, x + 0.5 * h * k1, k1)?;
            let k3 = unit_direction(qd, x + 0.5 * h * k2, k1)?;
            let k4 = unit_direction(qd, x + h * k3, k1)?;
            Some((k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0)
        })();
        let Some(slope) = stages else {
            if h > min_h {
                h *= 0.5;
                continue;
            }
            break if x.norm() < 10.0 * cfg.pole_radius {
                Termination::ReachedPole
            } else {
                Termination::ReachedZero(nearest(&zeros, x))
            };
        };
        let next = x + h * slope;
        let chord = (next - x) / (next - x).norm();
        let turn = (chord * d.conj()).arg().abs();
        if turn > cfg.max_turn && h > min_h {
            h *= 0.5;
            continue;
        }
        if turn > FRAC_PI_2 {
            return Err(Error::Branch {
                step: steps,
                angle: turn,
            });
        }
        x = next;
        d = unit_direction(qd, x, chord).unwrap_or(chord);
        points.push(x);
        steps += 1;
        if turn < cfg.max_turn / 4.0 {
            h = (2.0 * h).min(cfg.ds);
        }

        // inbound and within one step of the pole
        let inbound = (d * x.conj()).re < 0.0;
        if x.norm() < cfg.pole_radius || (inbound && x.norm() < 2.0 * h) {
            break Termination::ReachedPole;
        }
        if x.norm() > escape {
            break Termination::EscapedRadius;
        }
        match near_zero(x) {
            Some(i) if armed => break Termination::ReachedZero(i),
            None => armed = true,
            _ => {}
        }
    };

    Ok(TrajectoryPolyline {
        points,
        termination,
        final_direction: d,
    })
}

fn nearest(zeros: &[Complex64; 2], x: Complex64) -> usize {
    if (x - zeros[0]).norm() <= (x - zeros[1]).norm() {
        0
    } else {
        1
    }
}
