//! Scalar traits shared by the exact and floating-point code paths.

use std::fmt::Debug;
use std::ops::Neg;

use num_traits::{Float, FloatConst, FromPrimitive, Num};

/// Field element usable as a series coefficient or matrix entry.
///
/// Blanket-implemented; covers `f32`, `f64` and `BigRational`.
pub trait Scalar: Clone + Debug + PartialEq + Num + Neg<Output = Self> + FromPrimitive {}

impl<T> Scalar for T where T: Clone + Debug + PartialEq + Num + Neg<Output = T> + FromPrimitive {}

/// Floating-point scalar for the transcendental routines.
pub trait Real: Scalar + Float + FloatConst {}

impl<T> Real for T where T: Scalar + Float + FloatConst {}

/// Small integer embedded into the scalar field.
#[inline]
pub fn int<T: Scalar>(n: i64) -> T {
    T::from_i64(n).expect("small integer fits every scalar type")
}

/// One half.
#[inline]
pub fn half<T: Scalar>() -> T {
    T::one() / int(2)
}
