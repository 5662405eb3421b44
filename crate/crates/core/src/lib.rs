//! Effective generators and exactly conserved shadow energies of the first-
//! and second-order splitting integrators for the harmonic oscillator.
//!
//! * [`free_series`]: truncated noncommutative power series, exact oracle for
//!   `log(exp X1 exp X2 ...)`.
//! * [`goldberg`]: closed-form coefficients of alternating words and their
//!   collapse to `F(x)`, `F1`, `F2`.
//! * [`oscillator`]: step maps, generators, shadow forms, stability.
//!
//! The matrix and series types are generic over the scalar; the aliases below
//! fix the two instantiations used throughout, `f64` and exact rationals.

pub mod error;
pub mod free_series;
pub mod goldberg;
pub mod linalg;
pub mod oscillator;
pub mod scalar;

pub use error::{Error, Result};
pub use free_series::{log_exp_product, FreeSeries, Word};
pub use linalg::{Mat2, PhaseState};
pub use oscillator::{SchemeId, ShadowForm, StabilityClass};
pub use scalar::{Real, Scalar};

/// Exact arbitrary-precision rational.
pub type Rational = num_rational::BigRational;

pub type Mat2f = Mat2<f64>;
pub type Mat2q = Mat2<Rational>;
pub type PhaseStatef = PhaseState<f64>;
pub type PhaseStateq = PhaseState<Rational>;
pub type ShadowFormf = ShadowForm<f64>;
pub type ShadowFormq = ShadowForm<Rational>;
pub type FreeSeriesq = FreeSeries<Rational>;
