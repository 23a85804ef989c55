//! Numerical laboratory for generalized Zalcman functionals
//! `λ·a_n·a_m − a_{n+m−1}` over the class of normalized univalent functions.
//!
//! The crate is organized bottom-up:
//!
//! * [`powerseries`]: truncated complex power series (Cauchy products, powers).
//! * [`families`]: closed-form Koebe rotations.
//! * [`functionals`]: functional values, conjectured bounds, λ thresholds, gradients.
//! * [`schiffer`]: Schaeffer–Spencer differential-equation data and the
//!   double-zero factorization of its right-hand side.
//! * [`extremal_algebra`]: the trigonometric reduction behind the bound 14.
//! * [`quaddiff`]: the quadratic differential for `|2a₂a₃ − a₄|`, trajectory
//!   tracing and the half-plane check.
//! * [`loewner`]: radial Loewner evolution with piecewise-constant driving.
//! * [`search`]: multistart simplex search and λ sweeps.
//! * [`cli`]: report builders shared by the `zalcman` binary.

// `!(x > 0.0)` guards also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod error;
pub mod extremal_algebra;
pub mod families;
pub mod functionals;
pub mod loewner;
pub mod powerseries;
pub mod quaddiff;
pub mod schiffer;
pub mod search;

pub use error::{Error, Result};
pub use families::{koebe_rotation, CoefficientVector};
pub use functionals::ZalcmanSpec;
pub use num_complex::Complex64;
