//! Truncated complex power series vanishing at the origin.
//!
//! A [`TruncatedSeries`] of order `N` stores `c_1 … c_N`, the coefficients of
//! `z … z^N`. The constant term is implicitly zero. Products discard every
//! degree above `N`, and no operation ever extends the order.

use std::ops::{Add, Index, Mul};

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedSeries {
    coeffs: Vec<Complex64>,
}

impl TruncatedSeries {
    /// Builds a series from `c_1 … c_N`. The order is the slice length.
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::domain("truncated series needs order >= 1"));
        }
        Ok(Self { coeffs })
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Complex64::new(0.0, 0.0); order.max(1)],
        }
    }

    /// The series `z`.
    pub fn identity(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Complex64::new(1.0, 0.0);
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`; zero for `k == 0` and beyond the truncation.
    pub fn coeff(&self, k: usize) -> Complex64 {
        if k == 0 || k > self.coeffs.len() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[k - 1]
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// Cauchy product truncated at the common order.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let mut out = vec![Complex64::new(0.0, 0.0); self.order()];
        cauchy_product_into(&self.coeffs, &other.coeffs, &mut out);
        Self { coeffs: out }
    }

    /// `f^v`, whose coefficients are the `a_k^{(v)}` with `a_k^{(v)} = 0` for
    /// `k < v` and `a_v^{(v)} = 1`.
    ///
    /// Requires `c_1 == 1` and `1 <= v <= N`.
    pub fn power(&self, v: usize) -> Result<Self> {
        if self.coeffs[0] != Complex64::new(1.0, 0.0) {
            return Err(Error::domain(format!(
                "power expects a normalized series (c_1 = 1), got c_1 = {}",
                self.coeffs[0]
            )));
        }
        if v == 0 || v > self.order() {
            return Err(Error::domain(format!(
                "power exponent {v} outside 1..={}",
                self.order()
            )));
        }
        let mut result: Option<Self> = None;
        let mut base = self.clone();
        let mut e = v;
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul_unchecked(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        let mut out = result.expect("v >= 1");
        // leading coefficient of f^v is c_1^v = 1 exactly
        out.coeffs[v - 1] = Complex64::new(1.0, 0.0);
        Ok(out)
    }
}

/// Truncated Cauchy product on raw coefficient slices (`x[k]` is the
/// coefficient of `z^{k+1}`), written into `out`. All three slices share one
/// length.
pub fn cauchy_product_into(x: &[Complex64], y: &[Complex64], out: &mut [Complex64]) {
    let n = out.len();
    debug_assert!(x.len() == n && y.len() == n);
    out.fill(Complex64::new(0.0, 0.0));
    // degree (i+1)+(j+1) lands at index i+j+1
    for (i, a) in x.iter().enumerate().take(n.saturating_sub(1)) {
        if *a == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, b) in y.iter().enumerate().take(n - i - 1) {
            out[i + j + 1] += a * b;
        }
    }
}

impl Index<usize> for TruncatedSeries {
    type Output = Complex64;

    /// Indexes by degree (`s[1]` is the coefficient of `z`).
    fn index(&self, k: usize) -> &Complex64 {
        &self.coeffs[k - 1]
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn add(self, rhs: Self) -> TruncatedSeries {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        TruncatedSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;

    fn mul(self, rhs: Self) -> TruncatedSeries {
        assert_eq!(self.order(), rhs.order(), "series order mismatch");
        self.mul_unchecked(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn real(v: &[f64]) -> TruncatedSeries {
        TruncatedSeries::new(v.iter().map(|&x| c(x, 0.0)).collect()).unwrap()
    }

    #[test]
    fn monomial_product() {
        let z = TruncatedSeries::identity(4);
        let p = z.multiply(&z).unwrap();
        assert_eq!(p.coeffs(), real(&[0.0, 1.0, 0.0, 0.0]).coeffs());
    }

    #[test]
    fn binomial_square() {
        let f = real(&[1.0, 2.0, 0.0, 0.0]);
        let p = f.multiply(&f).unwrap();
        assert_eq!(p.coeffs(), real(&[0.0, 1.0, 4.0, 4.0]).coeffs());
    }

    #[test]
    fn koebe_square_brute_force() {
        let n = 6;
        let k = real(&(1..=n).map(|x| x as f64).collect::<Vec<_>>());
        let sq = k.multiply(&k).unwrap();
        for deg in 2..=n {
            let brute: f64 = (1..deg).map(|i| (i * (deg - i)) as f64).sum();
            assert_eq!(sq[deg].re, brute);
        }
        assert_eq!(sq[4].re, 10.0);
    }

    #[test]
    fn order_mismatch() {
        let a = TruncatedSeries::identity(3);
        let b = TruncatedSeries::identity(4);
        assert!(matches!(
            a.multiply(&b),
            Err(Error::OrderMismatch { left: 3, right: 4 })
        ));
    }

    #[test]
    fn power_low_orders_match_hand_expansion() {
        let (a2, a3, a4) = (c(0.3, -1.1), c(-0.7, 0.4), c(2.0, 0.5));
        let f = TruncatedSeries::new(vec![c(1.0, 0.0), a2, a3, a4]).unwrap();
        assert_eq!(f.power(1).unwrap(), f);

        let f2 = f.power(2).unwrap();
        assert_eq!(f2[1], c(0.0, 0.0));
        assert_eq!(f2[2], c(1.0, 0.0));
        assert!((f2[3] - 2.0 * a2).norm() < 1e-14);
        assert!((f2[4] - (a2 * a2 + 2.0 * a3)).norm() < 1e-14);

        let f3 = f.power(3).unwrap();
        assert_eq!(f3[3], c(1.0, 0.0));
        assert!((f3[4] - 3.0 * a2).norm() < 1e-14);
    }

    #[test]
    fn power_domain_errors() {
        let f = real(&[1.0, 2.0, 3.0]);
        assert!(f.power(0).is_err());
        assert!(f.power(4).is_err());
        let g = real(&[2.0, 0.0, 0.0]);
        assert!(g.power(2).is_err());
    }
}
