//! Generalized Zalcman functionals `λ·a_n·a_m − a_{n+m−1}`.
//!
//! Values are reported with the sign `λ·a_n·a_m − a_{n+m−1}`. The gradient
//! below is taken of the opposite-sign functional `𝒥 = a_4 − λ·a_2·a_3`,
//! which is the form the variational equations are written in; both share
//! the same modulus.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::CoefficientVector;

/// The triple `(λ, n, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ZalcmanSpec {
    lambda: f64,
    n: usize,
    m: usize,
}

impl ZalcmanSpec {
    pub fn new(lambda: f64, n: usize, m: usize) -> Result<Self> {
        if !(lambda > 0.0) || !lambda.is_finite() {
            return Err(Error::domain(format!(
                "lambda must be positive, got {lambda}"
            )));
        }
        if n < 2 || m < 2 {
            return Err(Error::domain(format!("need n, m >= 2, got ({n}, {m})")));
        }
        Ok(Self { lambda, n, m })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Index of the subtracted coefficient, `n + m − 1`.
    pub fn top_index(&self) -> usize {
        self.n + self.m - 1
    }
}

pub fn zalcman_value(f: &CoefficientVector, spec: &ZalcmanSpec) -> Result<Complex64> {
    f.require_order(spec.top_index())?;
    Ok(spec.lambda * f.a(spec.n) * f.a(spec.m) - f.a(spec.top_index()))
}

/// Conjectured bound `λnm − n − m + 1`.
pub fn zalcman_bound(spec: &ZalcmanSpec) -> f64 {
    let (n, m) = (spec.n as f64, spec.m as f64);
    spec.lambda * n * m - n - m + 1.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LambdaThresholds {
    /// `(n+m−1)/(nm)`: below this the conjectured bound is negative.
    pub low: f64,
    /// `nm/(n+m−1)`: from here on a bound at λ propagates to every μ ≥ λ.
    pub mono: f64,
}

pub fn lambda_thresholds(n: usize, m: usize) -> LambdaThresholds {
    let (nf, mf) = (n as f64, m as f64);
    LambdaThresholds {
        low: (nf + mf - 1.0) / (nf * mf),
        mono: nf * mf / (nf + mf - 1.0),
    }
}

/// Why [`extend_bound_by_monotonicity`] declined to certify a bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Refusal {
    MuBelowLambda,
    LambdaBelowThreshold,
    BoundNotEstablished,
    InvalidIndices,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ChainBound {
    Certified(f64),
    Refused(Refusal),
}

/// Carries a bound known at `lambda` to `mu` through
/// `|μa_na_m − a_{n+m−1}| ≤ (μ−λ)|a_n a_m| + |λa_na_m − a_{n+m−1}|` and
/// `|a_k| ≤ k`.
pub fn extend_bound_by_monotonicity(
    mu: f64,
    lambda: f64,
    holds_at_lambda: bool,
    n: usize,
    m: usize,
) -> ChainBound {
    if n < 2 || m < 2 {
        return ChainBound::Refused(Refusal::InvalidIndices);
    }
    if !holds_at_lambda {
        return ChainBound::Refused(Refusal::BoundNotEstablished);
    }
    if mu < lambda {
        return ChainBound::Refused(Refusal::MuBelowLambda);
    }
    if lambda < lambda_thresholds(n, m).mono {
        return ChainBound::Refused(Refusal::LambdaBelowThreshold);
    }
    let nm = (n * m) as f64;
    let at_lambda = lambda * nm - n as f64 - m as f64 + 1.0;
    ChainBound::Certified((mu - lambda) * nm + at_lambda)
}

/// Wirtinger derivatives `𝒥_v = ½(∂/∂x_v − i∂/∂y_v)𝒥` of `𝒥 = a_4 − λa_2a_3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FunctionalGradient {
    pub j2: Complex64,
    pub j3: Complex64,
    pub j4: Complex64,
}

impl FunctionalGradient {
    /// `[𝒥_2, 𝒥_3, 𝒥_4]`, the layout [`crate::schiffer::schaeffer_spencer`] takes.
    pub fn to_vec(&self) -> Vec<Complex64> {
        vec![self.j2, self.j3, self.j4]
    }
}

pub fn gradient(lambda: f64, f: &CoefficientVector) -> Result<FunctionalGradient> {
    f.require_order(4)?;
    Ok(FunctionalGradient {
        j2: -lambda * f.a(3),
        j3: -lambda * f.a(2),
        j4: Complex64::new(1.0, 0.0),
    })
}
