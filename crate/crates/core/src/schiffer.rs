//! Schaeffer–Spencer data for extremal problems on `a_2 … a_n`.
//!
//! An extremal function `w = f(z)` for a functional `𝒥(a_2, …, a_n)` satisfies
//!
//! ```text
//! (z w')² Σ_{v=2}^{n} A_v w^{−v−1} = B + Σ_{v=1}^{n−1} (B_v z^{v−n} + conj(B_v) z^{n−v})
//! ```
//!
//! with `A_v = Σ_{k≥v} a_k^{(v)} 𝒥_k`, `B_v = Σ_{k≤v} k a_k 𝒥_{n+k−v}` and
//! `B = Σ_{k≥2} (k−1) a_k 𝒥_k`. For `𝒥 = a_4 − λa_2a_3` the right-hand side is
//! `z^{−3}(1 + Pz + Qz² + Rz³ + Sz⁴ + Tz⁵ + z⁶)`.
//!
//! At an endpoint of the omitted arc the right-hand side has a double zero
//! `E` on the unit circle, `z³g(z) = (z − E)²(z⁴ + Dz³ + Cz² + Bz + A)`. The
//! quartic tail is stored as `q = [A, B, C, D]` (constant term first); these
//! `A … D` are unrelated to the `A_v`, `B_v` above.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::CoefficientVector;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SchifferData {
    /// `A_2 … A_n`.
    pub a: Vec<Complex64>,
    /// `B_1 … B_{n−1}`.
    pub bv: Vec<Complex64>,
    pub b: Complex64,
}

impl SchifferData {
    /// Number of coefficients `n` the functional depends on.
    pub fn degree(&self) -> usize {
        self.a.len() + 1
    }

    /// `A_v` for `2 <= v <= n`.
    pub fn a_v(&self, v: usize) -> Complex64 {
        self.a[v - 2]
    }

    /// `B_v` for `1 <= v <= n − 1`.
    pub fn b_v(&self, v: usize) -> Complex64 {
        self.bv[v - 1]
    }

    /// Right-hand side `B + Σ (B_v z^{v−n} + conj(B_v) z^{n−v})` as a Laurent
    /// polynomial on degrees `−(n−1) … n−1`.
    pub fn rhs(&self) -> LaurentPoly {
        let n = self.degree();
        let d = n - 1;
        let mut coeffs = vec![ZERO; 2 * d + 1];
        coeffs[d] = self.b;
        for v in 1..n {
            coeffs[v - 1] += self.b_v(v);
            coeffs[2 * d - (v - 1)] += self.b_v(v).conj();
        }
        LaurentPoly {
            low_degree: -(d as i32),
            coeffs,
        }
    }
}

/// Builds `(A_v, B_v, B)` from the gradient `[𝒥_2, …, 𝒥_n]`.
pub fn schaeffer_spencer(
    grad: &[Complex64],
    f: &CoefficientVector,
    n: usize,
) -> Result<SchifferData> {
    if n < 2 {
        return Err(Error::domain("schaeffer_spencer needs n >= 2"));
    }
    if grad.len() != n - 1 {
        return Err(Error::domain(format!(
            "gradient has {} entries, expected {} (J_2..J_{n})",
            grad.len(),
            n - 1
        )));
    }
    f.require_order(n)?;
    let j = |k: usize| grad[k - 2];
    let a = |k: usize| f.a(k);

    let series = CoefficientVector::new(f.as_slice()[..n].to_vec())?.to_series();
    let mut a_data = Vec::with_capacity(n - 1);
    for v in 2..=n {
        let pow = series.power(v)?;
        a_data.push((v..=n).map(|k| pow[k] * j(k)).sum());
    }

    let bv = (1..n)
        .map(|v| (1..=v).map(|k| k as f64 * a(k) * j(n + k - v)).sum())
        .collect();

    let b = (2..=n).map(|k| (k - 1) as f64 * a(k) * j(k)).sum();

    Ok(SchifferData { a: a_data, bv, b })
}

/// Finite Laurent polynomial `Σ c_k z^k` for `k = low_degree …`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LaurentPoly {
    pub low_degree: i32,
    pub coeffs: Vec<Complex64>,
}

impl LaurentPoly {
    pub fn high_degree(&self) -> i32 {
        self.low_degree + self.coeffs.len() as i32 - 1
    }

    pub fn coeff(&self, k: i32) -> Complex64 {
        if k < self.low_degree || k > self.high_degree() {
            ZERO
        } else {
            self.coeffs[(k - self.low_degree) as usize]
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs, z) * z.powi(self.low_degree)
    }

    /// Coefficients of `z^{−low}·g(z)`, lowest degree first.
    pub fn numerator(&self) -> &[Complex64] {
        &self.coeffs
    }
}

/// Right-hand side of the extremal equation for `𝒥 = a_4 − λa_2a_3`, built
/// from the closed forms of `P, Q, R, S, T`.
pub fn rhs_polynomial(lambda: f64, f: &CoefficientVector) -> Result<LaurentPoly> {
    f.require_order(4)?;
    let (a2, a3, a4) = (f.a(2), f.a(3), f.a(4));
    let p = (2.0 - lambda) * a2;
    let q = (3.0 - lambda) * a3 - 2.0 * lambda * a2 * a2;
    let r = 3.0 * (a4 - lambda * a2 * a3);
    Ok(LaurentPoly {
        low_degree: -3,
        coeffs: vec![ONE, p, q, r, q.conj(), p.conj(), ONE],
    })
}

/// `max_{k≥1} |c_k − conj(c_{−k})|` over the off-centre pairs.
///
/// The centre `c_0 = 3(a_4 − λa_2a_3)` is real only when the functional value
/// is, so it is left out here; see [`center_imaginary`]. Full symmetry
/// `g(z) = conj(g(1/z̄))` on `|z| = 1` needs both to vanish.
pub fn check_reciprocal_symmetry(g: &LaurentPoly) -> Result<f64> {
    if g.low_degree != -g.high_degree() {
        return Err(Error::domain(format!(
            "degree range {}..{} is not symmetric",
            g.low_degree,
            g.high_degree()
        )));
    }
    let d = g.high_degree();
    Ok((1..=d)
        .map(|k| (g.coeff(k) - g.coeff(-k).conj()).norm())
        .fold(0.0, f64::max))
}

/// `|Im c_0|`.
pub fn center_imaginary(g: &LaurentPoly) -> f64 {
    g.coeff(0).im.abs()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FactorizedG {
    /// Double zero on the unit circle.
    pub e: Complex64,
    /// Quartic tail `[A, B, C, D]` of `z⁴ + Dz³ + Cz² + Bz + A`.
    pub q: [Complex64; 4],
    pub residual: f64,
}

impl FactorizedG {
    /// Degree-6 numerator `(z − E)²·(z⁴ + Dz³ + Cz² + Bz + A)`, lowest degree first.
    pub fn expand(&self) -> [Complex64; 7] {
        let quartic = [self.q[0], self.q[1], self.q[2], self.q[3], ONE];
        let square = [self.e * self.e, -2.0 * self.e, ONE];
        let mut out = [ZERO; 7];
        for (i, s) in square.iter().enumerate() {
            for (j, q) in quartic.iter().enumerate() {
                out[i + j] += s * q;
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
pub struct DoubleRootOptions {
    /// Two roots closer than this are treated as one split double root.
    pub cluster_radius: f64,
    /// Largest accepted `max(|p(E)|, |p'(E)|, deflation remainder)`.
    pub threshold: f64,
    /// Largest accepted `||E| − 1|`.
    pub unimodular_tol: f64,
}

impl Default for DoubleRootOptions {
    fn default() -> Self {
        Self {
            cluster_radius: 1e-4,
            threshold: 1e-6,
            unimodular_tol: 1e-6,
        }
    }
}

pub fn double_root_fit(g: &LaurentPoly) -> Result<FactorizedG> {
    double_root_fit_with(g, &DoubleRootOptions::default())
}

/// Locates the double zero of the sextic numerator on the unit circle and
/// deflates it.
///
/// Roots come from the companion matrix; the pair nearest `|z| = 1` among
/// those closer than `cluster_radius` is polished by Newton's method on `p'`.
pub fn double_root_fit_with(g: &LaurentPoly, opts: &DoubleRootOptions) -> Result<FactorizedG> {
    if g.low_degree != -3 || g.coeffs.len() != 7 {
        return Err(Error::domain(
            "double_root_fit expects a degree -3..3 Laurent polynomial",
        ));
    }
    if g.coeff(-3) != ONE || g.coeff(3) != ONE {
        return Err(Error::domain("double_root_fit expects c_{-3} = c_3 = 1"));
    }
    let p = g.numerator();
    let dp = derivative(p);
    let ddp = derivative(&dp);
    let roots = polynomial_roots(p)?;

    let mut candidates: Vec<(Complex64, f64)> = Vec::new();
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if (roots[i] - roots[j]).norm() >= opts.cluster_radius {
                continue;
            }
            let e = newton(&dp, &ddp, 0.5 * (roots[i] + roots[j]));
            let resid = horner(p, e).norm().max(horner(&dp, e).norm());
            if candidates
                .iter()
                .all(|(c, _)| (c - e).norm() > opts.cluster_radius)
            {
                candidates.push((e, resid));
            }
        }
    }

    let accepted: Vec<_> = candidates
        .iter()
        .filter(|(e, r)| *r <= opts.threshold && (e.norm() - 1.0).abs() <= opts.unimodular_tol)
        .copied()
        .collect();

    match accepted.as_slice() {
        [(e, _)] => {
            let (q, remainder) = deflate_twice(p, *e);
            let residual = horner(p, *e)
                .norm()
                .max(horner(&dp, *e).norm())
                .max(remainder);
            if residual > opts.threshold {
                return Err(Error::NoDoubleZero {
                    best_residual: residual,
                    diagnostics: format!("deflation remainder {remainder:.3e} at E = {e}"),
                });
            }
            Ok(FactorizedG { e: *e, q, residual })
        }
        [] => {
            let best = candidates
                .iter()
                .map(|(e, r)| r.max((e.norm() - 1.0).abs()))
                .fold(f64::INFINITY, f64::min);
            let min_gap = min_pair_distance(&roots);
            Err(Error::NoDoubleZero {
                best_residual: best,
                diagnostics: format!(
                    "{} clustered candidates, closest root pair {:.3e} apart, roots {:?}",
                    candidates.len(),
                    min_gap,
                    roots
                ),
            })
        }
        many => Err(Error::NoDoubleZero {
            best_residual: many.iter().map(|(_, r)| *r).fold(0.0, f64::max),
            diagnostics: format!(
                "{} unimodular double zeros {:?}; only one is supported",
                many.len(),
                many.iter().map(|(e, _)| *e).collect::<Vec<_>>()
            ),
        }),
    }
}

/// Residuals of the five coefficient identities between the fitted
/// factorization and the closed forms `P, Q, R, S, T` of `f`.
///
/// At `λ = 3` these read `BE² − 2AE = −a_2`, `A − 2EB + E²C = −6a_2²`,
/// `B − 2EC + E²D = 3(a_4 − 3a_2a_3)`, `C − 2ED + E² = −6 conj(a_2²)` and
/// `D − 2E = −conj(a_2)`.
pub fn matching_residuals(
    fac: &FactorizedG,
    f: &CoefficientVector,
    lambda: f64,
) -> Result<[f64; 5]> {
    let rhs = rhs_polynomial(lambda, f)?;
    let [a, b, c, d] = fac.q;
    let e = fac.e;
    let lhs = [
        b * e * e - 2.0 * a * e,
        a - 2.0 * e * b + e * e * c,
        b - 2.0 * e * c + e * e * d,
        c - 2.0 * e * d + e * e,
        d - 2.0 * e,
    ];
    let mut out = [0.0; 5];
    for (k, l) in lhs.iter().enumerate() {
        out[k] = (l - rhs.coeffs[k + 1]).norm();
    }
    Ok(out)
}

/// `(|D − conj(B)·A|, |C − conj(C)·A|)`.
pub fn relation_check(fac: &FactorizedG) -> (f64, f64) {
    let [a, b, c, d] = fac.q;
    ((d - b.conj() * a).norm(), (c - c.conj() * a).norm())
}

/// Roots of `Σ c_k z^k` (lowest degree first, nonzero leading coefficient)
/// as eigenvalues of the companion matrix.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let deg = coeffs.len().saturating_sub(1);
    let lead = *coeffs
        .last()
        .ok_or_else(|| Error::domain("empty polynomial"))?;
    if deg == 0 || lead == ZERO {
        return Err(Error::domain(
            "polynomial must have degree >= 1 and nonzero leading term",
        ));
    }
    let mut companion = DMatrix::<Complex64>::zeros(deg, deg);
    for i in 1..deg {
        companion[(i, i - 1)] = ONE;
    }
    for i in 0..deg {
        companion[(i, deg - 1)] = -coeffs[i] / lead;
    }
    let schur = companion.schur();
    let (_, t) = schur.unpack();
    Ok((0..deg).map(|i| t[(i, i)]).collect())
}

pub(crate) fn horner(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
}

fn derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * k as f64)
        .collect()
}

fn newton(f: &[Complex64], df: &[Complex64], mut z: Complex64) -> Complex64 {
    for _ in 0..60 {
        let d = horner(df, z);
        if d == ZERO {
            break;
        }
        let step = horner(f, z) / d;
        z -= step;
        if step.norm() <= 1e-16 * z.norm().max(1.0) {
            break;
        }
    }
    z
}

/// Divides the monic sextic by `(z − e)²`; returns the quartic tail (without
/// its leading 1) and the norm of the two synthetic-division remainders.
fn deflate_twice(p: &[Complex64], e: Complex64) -> ([Complex64; 4], f64) {
    let once = synthetic_division(p, e);
    let twice = synthetic_division(&once.0, e);
    let q = &twice.0;
    (
        [q[0], q[1], q[2], q[3]],
        (once.1.norm_sqr() + twice.1.norm_sqr()).sqrt(),
    )
}

fn synthetic_division(p: &[Complex64], e: Complex64) -> (Vec<Complex64>, Complex64) {
    let deg = p.len() - 1;
    let mut quotient = vec![ZERO; deg];
    let mut carry = ZERO;
    for k in (1..=deg).rev() {
        carry = carry * e + p[k];
        quotient[k - 1] = carry;
    }
    (quotient, carry * e + p[0])
}

fn min_pair_distance(roots: &[Complex64]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            best = best.min((roots[i] - roots[j]).norm());
        }
    }
    best
}
