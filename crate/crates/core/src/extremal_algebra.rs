//! Trigonometric reduction of `|3a₂a₃ − a₄| ≤ 14`.
//!
//! With `E = e^{iθ}`, `B = se^{iα}`, `C = re^{iβ}` and `−a₂ = Re^{iφ}` the real
//! part `Re(3a₂a₃ − a₄)` equals `(2/3)(r cos pπ − s cos α)`, and the latter is
//! `G(R, θ, φ) = −6R² cos(2φ − θ) + R cos(2θ − φ) + cos 3θ`.

use std::f64::consts::{FRAC_PI_3, PI, TAU};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Polar data of a factorized right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TrigState {
    pub theta: f64,
    pub alpha: f64,
    pub s: f64,
    pub beta: f64,
    pub r: f64,
    /// Parity with `e^{i(β+θ)} = e^{ipπ}`.
    pub p: i64,
    pub phi: f64,
    /// `|a₂|`, in `(0, 2]`.
    pub big_r: f64,
}

impl TrigState {
    pub fn validate(&self) -> Result<()> {
        if !(self.big_r > 0.0 && self.big_r <= 2.0) {
            return Err(Error::domain(format!(
                "|a2| = {} outside (0, 2]",
                self.big_r
            )));
        }
        if self.r < 0.0 || self.s < 0.0 {
            return Err(Error::domain("r and s are moduli and must be nonnegative"));
        }
        let unit = Complex64::from_polar(1.0, self.beta + self.theta);
        let parity = Complex64::new(if self.p.rem_euclid(2) == 0 { 1.0 } else { -1.0 }, 0.0);
        if (unit - parity).norm() > 1e-9 {
            return Err(Error::domain(format!(
                "e^(i(beta+theta)) = {unit} is not e^(i p pi) for p = {}",
                self.p
            )));
        }
        Ok(())
    }
}

/// `(2/3)(r cos pπ − s cos α)`.
pub fn real_part_identity(state: &TrigState) -> f64 {
    let sign = if state.p.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    2.0 / 3.0 * (state.r * sign - state.s * state.alpha.cos())
}

pub fn g_function(big_r: f64, theta: f64, phi: f64) -> Result<f64> {
    check_radius(big_r)?;
    Ok(g_unchecked(big_r, theta, phi))
}

fn g_unchecked(big_r: f64, theta: f64, phi: f64) -> f64 {
    -6.0 * big_r * big_r * (2.0 * phi - theta).cos()
        + big_r * (2.0 * theta - phi).cos()
        + (3.0 * theta).cos()
}

fn check_radius(big_r: f64) -> Result<()> {
    if big_r > 0.0 && big_r <= 2.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("R = {big_r} outside (0, 2]")))
    }
}

/// `(∂G/∂R, ∂G/∂φ)`.
pub fn g_partials(big_r: f64, theta: f64, phi: f64) -> (f64, f64) {
    let d_r = -12.0 * big_r * (2.0 * phi - theta).cos() + (2.0 * theta - phi).cos();
    let d_phi =
        12.0 * big_r * big_r * (2.0 * phi - theta).sin() - big_r * (phi - 2.0 * theta).sin();
    (d_r, d_phi)
}

/// A one-parameter family of critical points: `R` fixed, `θ + φ ≡ phase_sum (mod 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CriticalManifold {
    pub big_r: f64,
    pub phase_sum: f64,
}

impl CriticalManifold {
    /// `φ` on the manifold for a given `θ`.
    pub fn phi_for(&self, theta: f64) -> f64 {
        self.phase_sum - theta
    }
}

/// Joint zeros of `∂G/∂R` and `∂G/∂φ`.
///
/// For `R > 0` the pair is equivalent to `−12R e^{i(θ−2φ)} + e^{i(2θ−φ)} = 0`,
/// i.e. `12R = e^{i(θ+φ)}`. The modulus fixes `R`, the argument fixes `θ + φ`.
pub fn g_critical_points() -> Vec<CriticalManifold> {
    // 12R·e^{i(θ−2φ)} = e^{i(2θ−φ)}  ⇒  12R = e^{i(θ+φ)}
    let rhs = Complex64::new(1.0, 0.0);
    let big_r = rhs.norm() / 12.0;
    let phase_sum = rhs.arg().rem_euclid(TAU);
    vec![CriticalManifold { big_r, phase_sum }]
}

/// `G` restricted to `φ = −θ`: `(−6R² + R + 1) cos 3φ`.
pub fn g_on_manifold(big_r: f64, phi: f64) -> Result<f64> {
    check_radius(big_r)?;
    Ok((-6.0 * big_r * big_r + big_r + 1.0) * (3.0 * phi).cos())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GMaximum {
    pub g_max: f64,
    /// `(2/3)·g_max`, the bound on `|3a₂a₃ − a₄|`.
    pub bound: f64,
    pub argmax_r: f64,
    pub argmax_phi: f64,
    pub critical_r: f64,
    /// `G` at the interior critical radius with `φ = 0`.
    pub interior_value: f64,
}

/// Two-stage maximization: the interior critical family `R = 1/12`, then the
/// boundary `R = 2` on `φ = −θ`, scanning `cos 3φ` over `[−1, 1]`.
pub fn maximize_g() -> GMaximum {
    let critical = g_critical_points()[0];
    let interior_value = g_on_manifold(critical.big_r, 0.0).expect("1/12 in range");
    let interior_best = interior_value.abs();

    // On φ = −θ the φ-dependence is only through c = cos 3φ ∈ [−1, 1];
    // G is linear in c, so the scan reduces to its endpoints.
    let boundary_r = 2.0;
    let amplitude = -6.0 * boundary_r * boundary_r + boundary_r + 1.0;
    let (best_c, boundary_best) = [-1.0_f64, 1.0]
        .into_iter()
        .map(|c| (c, amplitude * c))
        .fold(
            (0.0, f64::NEG_INFINITY),
            |acc, x| if x.1 > acc.1 { x } else { acc },
        );
    let phi = best_c.acos() / 3.0;

    let (g_max, argmax_r, argmax_phi) = if boundary_best >= interior_best {
        (boundary_best, boundary_r, phi)
    } else {
        (interior_best, critical.big_r, 0.0)
    };
    GMaximum {
        g_max,
        bound: 2.0 / 3.0 * g_max,
        argmax_r,
        argmax_phi,
        critical_r: critical.big_r,
        interior_value,
    }
}

/// Largest value of `g_on_manifold` on an `nr × nphi` grid of
/// `(0, 2] × [0, 2π)`; the `R` grid ends exactly at 2 and the `φ` grid
/// contains `π/3`.
pub fn manifold_grid_max(nr: usize, nphi: usize) -> (f64, f64, f64) {
    use rayon::prelude::*;
    (1..=nr)
        .into_par_iter()
        .map(|i| {
            let big_r = 2.0 * i as f64 / nr as f64;
            let amp = -6.0 * big_r * big_r + big_r + 1.0;
            (0..nphi)
                .map(|j| {
                    let phi = TAU * j as f64 / nphi as f64;
                    (amp * (3.0 * phi).cos(), big_r, phi)
                })
                .fold((f64::NEG_INFINITY, 0.0, 0.0), max3)
        })
        .reduce(|| (f64::NEG_INFINITY, 0.0, 0.0), max3)
}

fn max3(a: (f64, f64, f64), b: (f64, f64, f64)) -> (f64, f64, f64) {
    if b.0 > a.0 {
        b
    } else {
        a
    }
}

/// Unconstrained grid maximum of `G` over `(R, θ, φ)`. Diagnostic only: off the
/// extremal manifold the values exceed 21 and bound nothing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct UnconstrainedDiagnostic {
    pub value: f64,
    pub big_r: f64,
    pub theta: f64,
    pub phi: f64,
    pub exceeds_manifold_max: bool,
}

pub fn unconstrained_grid_max(nr: usize, nangle: usize) -> UnconstrainedDiagnostic {
    use rayon::prelude::*;
    let manifold = maximize_g().g_max;
    let (value, big_r, theta, phi) = (1..=nr)
        .into_par_iter()
        .flat_map_iter(|i| {
            let big_r = 2.0 * i as f64 / nr as f64;
            (0..nangle).flat_map(move |a| {
                (0..nangle).map(move |b| {
                    let theta = TAU * a as f64 / nangle as f64 - PI;
                    let phi = TAU * b as f64 / nangle as f64 - PI;
                    (g_unchecked(big_r, theta, phi), big_r, theta, phi)
                })
            })
        })
        .reduce(
            || (f64::NEG_INFINITY, 0.0, 0.0, 0.0),
            |x, y| if y.0 > x.0 { y } else { x },
        );
    UnconstrainedDiagnostic {
        value,
        big_r,
        theta,
        phi,
        exceeds_manifold_max: value > manifold + 1e-9,
    }
}

/// `φ = π/3`, where the boundary maximum sits.
pub const BOUNDARY_ARGMAX_PHI: f64 = FRAC_PI_3;
