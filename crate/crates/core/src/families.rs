//! Normalized coefficient vectors and the Koebe rotations.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::powerseries::TruncatedSeries;

/// Taylor coefficients `a_1 = 1, a_2, …, a_N` of a candidate in 𝒮.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CoefficientVector {
    a: Vec<Complex64>,
}

impl CoefficientVector {
    /// Requires `a[0] == 1` exactly and at least two entries.
    pub fn new(a: Vec<Complex64>) -> Result<Self> {
        if a.len() < 2 {
            return Err(Error::domain("coefficient vector needs N >= 2"));
        }
        if a[0] != Complex64::new(1.0, 0.0) {
            return Err(Error::domain(format!("a_1 must be 1, got {}", a[0])));
        }
        Ok(Self { a })
    }

    /// Builds `(1, a_2, …, a_N)` from the tail `a_2 … a_N`.
    pub fn from_tail(tail: &[Complex64]) -> Result<Self> {
        let mut a = Vec::with_capacity(tail.len() + 1);
        a.push(Complex64::new(1.0, 0.0));
        a.extend_from_slice(tail);
        Self::new(a)
    }

    pub fn order(&self) -> usize {
        self.a.len()
    }

    /// `a_k`, 1-based.
    pub fn a(&self, k: usize) -> Complex64 {
        self.a[k - 1]
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.a
    }

    pub fn to_series(&self) -> TruncatedSeries {
        TruncatedSeries::new(self.a.clone()).expect("non-empty")
    }

    pub(crate) fn require_order(&self, needed: usize) -> Result<()> {
        if self.order() < needed {
            return Err(Error::domain(format!(
                "coefficient vector of order {} but order {needed} is required",
                self.order()
            )));
        }
        Ok(())
    }
}

/// Coefficients of `z/(1 − e^{iθ}z)²`: `a_n = n·e^{i(n−1)θ}`.
pub fn koebe_rotation(theta: f64, order: usize) -> Result<CoefficientVector> {
    if order < 2 {
        return Err(Error::domain("koebe_rotation needs N >= 2"));
    }
    // reduce first so θ and θ + 2π give the same floating-point phases
    let theta = theta.rem_euclid(TAU);
    let a = (1..=order)
        .map(|n| {
            if n == 1 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::from_polar(n as f64, (n - 1) as f64 * theta)
            }
        })
        .collect();
    CoefficientVector::new(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn koebe_is_1234() {
        let k = koebe_rotation(0.0, 4).unwrap();
        for n in 1..=4 {
            assert_eq!(k.a(n), Complex64::new(n as f64, 0.0));
        }
    }

    #[test]
    fn rotation_by_pi_alternates() {
        let k = koebe_rotation(PI, 3).unwrap();
        assert_eq!(k.a(1), Complex64::new(1.0, 0.0));
        assert!((k.a(2) - Complex64::new(-2.0, 0.0)).norm() < 1e-12);
        assert!((k.a(3) - Complex64::new(3.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rotation_by_pi_over_3_matches_binomial_expansion() {
        // z/(1-uz)^2 = sum n u^{n-1} z^n, expanded term by term with u = e^{iπ/3}
        let u = Complex64::from_polar(1.0, PI / 3.0);
        let k = koebe_rotation(PI / 3.0, 4).unwrap();
        assert!((k.a(2) - 2.0 * u).norm() < 1e-12);
        assert!((k.a(3) - 3.0 * u * u).norm() < 1e-12);
        assert!((k.a(4) - Complex64::new(-4.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn rejects_short_orders_and_bad_normalization() {
        assert!(koebe_rotation(0.0, 1).is_err());
        assert!(CoefficientVector::new(vec![Complex64::new(2.0, 0.0); 4]).is_err());
    }
}
