//! Radial Loewner evolution with piecewise-constant driving.
//!
//! For a driving phase `θ(t)` with `ζ(t) = e^{iθ(t)}`, the flow
//!
//! ```text
//! ∂w/∂t = −w (1 − ζw)/(1 + ζw),    w(z, 0) = z,
//! ```
//!
//! maps the disk into itself, and `f(z) = lim_{t→∞} e^t w(z, t)` belongs to 𝒮.
//! Writing `W = e^t w = Σ b_k z^k` turns the flow into the coefficient system
//!
//! ```text
//! dW/dt = 2 Σ_{j≥1} (−1)^{j−1} ζ^j e^{−jt} W^{j+1},
//! ```
//!
//! which is integrated in truncated power series with the classical RK4
//! scheme. With this orientation a constant phase `θ` produces exactly the
//! Koebe rotation `z/(1 − e^{iθ}z)²`, i.e. the phase *is* the rotation angle.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::CoefficientVector;
use crate::powerseries::{cauchy_product_into, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DrivingFunction {
    angles: Vec<f64>,
    breakpoints: Vec<f64>,
}

impl DrivingFunction {
    /// `angles[j]` holds on `[breakpoints[j], breakpoints[j+1])`; the last angle
    /// also holds after the final breakpoint.
    pub fn new(angles: Vec<f64>, breakpoints: Vec<f64>) -> Result<Self> {
        if angles.is_empty() {
            return Err(Error::domain("driving needs at least one phase"));
        }
        if breakpoints.len() != angles.len() + 1 {
            return Err(Error::domain(format!(
                "{} phases need {} breakpoints, got {}",
                angles.len(),
                angles.len() + 1,
                breakpoints.len()
            )));
        }
        if breakpoints[0] != 0.0 {
            return Err(Error::domain("first breakpoint must be 0"));
        }
        if breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::domain("breakpoints must be strictly increasing"));
        }
        if angles.iter().chain(&breakpoints).any(|x| !x.is_finite()) {
            return Err(Error::domain("driving data must be finite"));
        }
        Ok(Self {
            angles,
            breakpoints,
        })
    }

    /// `K` phases on equal pieces of `[0, horizon]`.
    pub fn equispaced(angles: Vec<f64>, horizon: f64) -> Result<Self> {
        if !(horizon > 0.0) {
            return Err(Error::domain("horizon must be positive"));
        }
        let k = angles.len();
        let breakpoints = (0..=k)
            .map(|j| horizon * j as f64 / k.max(1) as f64)
            .collect();
        Self::new(angles, breakpoints)
    }

    pub fn constant(angle: f64, horizon: f64) -> Result<Self> {
        Self::equispaced(vec![angle], horizon)
    }

    pub fn angles(&self) -> &[f64] {
        &self.angles
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn horizon(&self) -> f64 {
        *self.breakpoints.last().expect("nonempty")
    }

    /// Same breakpoints, new phases.
    pub fn with_angles(&self, angles: &[f64]) -> Result<Self> {
        Self::new(angles.to_vec(), self.breakpoints.clone())
    }

    /// Every phase shifted by `delta`.
    pub fn shifted(&self, delta: f64) -> Self {
        Self {
            angles: self.angles.iter().map(|a| a + delta).collect(),
            breakpoints: self.breakpoints.clone(),
        }
    }

    fn piece_end(&self, j: usize) -> f64 {
        if j + 1 < self.angles.len() {
            self.breakpoints[j + 1]
        } else {
            f64::INFINITY
        }
    }
}

/// Deterministic phases in `[0, 2π)` on equispaced pieces of `[0, horizon]`.
pub fn random_driving(k: usize, horizon: f64, seed: u64) -> Result<DrivingFunction> {
    if k == 0 {
        return Err(Error::domain("K must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let angles = (0..k)
        .map(|_| rng.random_range(0.0..std::f64::consts::TAU))
        .collect();
    DrivingFunction::equispaced(angles, horizon)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvolveOptions {
    pub dt: f64,
    /// Minimum integration time; the driving's own horizon is used if longer.
    pub horizon: f64,
    /// Convergence: every coefficient moves less than this over the last unit of time.
    pub tolerance: f64,
    /// Whole time units the integration may continue past the horizon while
    /// waiting for convergence.
    pub max_extension: usize,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            dt: 1e-3,
            horizon: 25.0,
            tolerance: 1e-9,
            max_extension: 25,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    pub coeffs: CoefficientVector,
    /// Time at which the integration stopped.
    pub horizon_used: f64,
    /// Largest coefficient change over the final unit of time.
    pub last_delta: f64,
}

/// Evolves to the default horizon with step `dt`.
pub fn evolve(driving: &DrivingFunction, order: usize, dt: f64) -> Result<CoefficientVector> {
    let opts = EvolveOptions {
        dt,
        ..EvolveOptions::default()
    };
    Ok(evolve_with(driving, order, &opts)?.coeffs)
}

pub fn evolve_with(
    driving: &DrivingFunction,
    order: usize,
    opts: &EvolveOptions,
) -> Result<Evolution> {
    if order < 2 {
        return Err(Error::domain("evolution order must be at least 2"));
    }
    if !(opts.dt > 0.0) || !opts.dt.is_finite() {
        return Err(Error::domain(format!(
            "dt must be positive, got {}",
            opts.dt
        )));
    }
    let horizon = opts.horizon.max(driving.horizon());
    if !(horizon >= 1.0) {
        return Err(Error::domain("horizon must be at least one time unit"));
    }

    let mut state = Integrator::new(driving, order, opts.dt);
    state.advance_to(horizon - 1.0);
    let mut previous = state.series();
    state.advance_to(horizon);
    let mut end = horizon;
    let mut delta = max_delta(&previous, &state.series());
    let mut extensions = 0;
    while delta >= opts.tolerance {
        if extensions == opts.max_extension {
            return Err(Error::Horizon {
                horizon: end,
                last_delta: delta,
            });
        }
        previous = state.series();
        end += 1.0;
        state.advance_to(end);
        delta = max_delta(&previous, &state.series());
        extensions += 1;
    }

    let mut a = state.w.clone();
    a[0] = Complex64::new(1.0, 0.0);
    Ok(Evolution {
        coeffs: CoefficientVector::new(a)?,
        horizon_used: end,
        last_delta: delta,
    })
}

fn max_delta(a: &TruncatedSeries, b: &TruncatedSeries) -> f64 {
    a.coeffs()
        .iter()
        .zip(b.coeffs())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

struct Integrator<'a> {
    driving: &'a DrivingFunction,
    dt: f64,
    t: f64,
    piece: usize,
    w: Vec<Complex64>,
    scratch: Scratch,
}

impl<'a> Integrator<'a> {
    fn new(driving: &'a DrivingFunction, order: usize, dt: f64) -> Self {
        let mut w = vec![Complex64::new(0.0, 0.0); order];
        w[0] = Complex64::new(1.0, 0.0);
        Self {
            driving,
            dt,
            t: 0.0,
            piece: 0,
            w,
            scratch: Scratch::new(order),
        }
    }

    fn series(&self) -> TruncatedSeries {
        TruncatedSeries::new(self.w.clone()).expect("order >= 2")
    }

    /// Steps never straddle a breakpoint, so each RK4 step sees one phase.
    fn advance_to(&mut self, target: f64) {
        while self.t < target {
            while self.driving.piece_end(self.piece) <= self.t {
                self.piece += 1;
            }
            let stop = target.min(self.driving.piece_end(self.piece));
            let span = stop - self.t;
            let steps = (span / self.dt - 1e-9).ceil().max(1.0) as usize;
            let h = span / steps as f64;
            let zeta = Complex64::from_polar(1.0, self.driving.angles[self.piece]);
            let t0 = self.t;
            for i in 0..steps {
                self.scratch
                    .rk4_step(&mut self.w, t0 + i as f64 * h, h, zeta);
            }
            self.t = stop;
        }
    }
}

/// Preallocated buffers for the coefficient flow.
struct Scratch {
    k: [Vec<Complex64>; 4],
    stage: Vec<Complex64>,
    u: Vec<Complex64>,
    term: Vec<Complex64>,
    tmp: Vec<Complex64>,
    sum: Vec<Complex64>,
}

impl Scratch {
    fn new(order: usize) -> Self {
        let z = || vec![Complex64::new(0.0, 0.0); order];
        Self {
            k: [z(), z(), z(), z()],
            stage: z(),
            u: z(),
            term: z(),
            tmp: z(),
            sum: z(),
        }
    }

    /// `out = 2 Σ_{j≥1} (−1)^{j−1} (ζ e^{−t})^j W^{j+1}`, built as `2W·(u − u² + u³ − …)`
    /// with `u = ζ e^{−t} W`.
    fn flow(&mut self, w: &[Complex64], t: f64, zeta: Complex64, out: &mut [Complex64]) {
        let n = w.len();
        let c = zeta * (-t).exp();
        for (u, x) in self.u.iter_mut().zip(w) {
            *u = c * x;
        }
        self.sum.copy_from_slice(&self.u);
        self.term.copy_from_slice(&self.u);
        for j in 2..n {
            cauchy_product_into(&self.term, &self.u, &mut self.tmp);
            std::mem::swap(&mut self.term, &mut self.tmp);
            let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
            for (s, x) in self.sum.iter_mut().zip(&self.term) {
                *s += sign * x;
            }
        }
        cauchy_product_into(w, &self.sum, out);
        for x in out.iter_mut() {
            *x *= 2.0;
        }
    }

    fn rk4_step(&mut self, w: &mut [Complex64], t: f64, h: f64, zeta: Complex64) {
        let mut k = std::mem::take(&mut self.k);
        let mut stage = std::mem::take(&mut self.stage);

        self.flow(w, t, zeta, &mut k[0]);
        for (i, (k_prev, t_off)) in [(0usize, 0.5 * h), (1, 0.5 * h), (2, h)]
            .into_iter()
            .enumerate()
        {
            for ((s, x), d) in stage.iter_mut().zip(w.iter()).zip(&k[k_prev]) {
                *s = x + t_off * d;
            }
            let (_, rest) = k.split_at_mut(i + 1);
            self.flow(&stage, t + t_off, zeta, &mut rest[0]);
        }
        for (j, x) in w.iter_mut().enumerate() {
            *x += h / 6.0 * (k[0][j] + 2.0 * k[1][j] + 2.0 * k[2][j] + k[3][j]);
        }

        self.k = k;
        self.stage = stage;
    }
}
