//! Scalar abstraction shared by every numerical module.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real field the engine computes over: `f32` or `f64`.
///
/// The associated tolerances are the error floors each precision can
/// actually deliver; the `f64` values are the contract values of the engine.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Unitarity, normalization and probability-conservation tolerance.
    const UNIT_TOL: Self;
    /// Window inside which an SU(2) coefficient vector is silently renormalized.
    const SU2_NORM_TOL: Self;
    /// Relative width of the top eigenspace.
    const DEGENERACY_TOL: Self;
    /// Relative off-diagonal norm at which Jacobi iteration stops.
    const JACOBI_TOL: Self;
}

impl Real for f64 {
    const UNIT_TOL: f64 = 1e-12;
    const SU2_NORM_TOL: f64 = 1e-9;
    const DEGENERACY_TOL: f64 = 1e-9;
    const JACOBI_TOL: f64 = 1e-12;
}

impl Real for f32 {
    const UNIT_TOL: f32 = 1e-5;
    const SU2_NORM_TOL: f32 = 1e-5;
    const DEGENERACY_TOL: f32 = 1e-4;
    const JACOBI_TOL: f32 = 1e-6;
}

/// Converts an `f64` literal into `T`.
#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in every Real")
}

/// Lossy view of `T` as `f64`, for formatting and diagnostics.
#[inline]
pub(crate) fn as_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
