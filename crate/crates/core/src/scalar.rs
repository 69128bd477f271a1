//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar the toolkit is generic over (`f32`, `f64`).
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + Sum
    + Default
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Machine epsilon as a plain constant, handy in tolerance arithmetic.
    const EPS: Self;
}

impl Real for f32 {
    const EPS: Self = f32::EPSILON;
}

impl Real for f64 {
    const EPS: Self = f64::EPSILON;
}

/// Converts an `f64` literal into the working scalar.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

/// Converts a count into the working scalar.
#[inline]
pub fn count<T: Real>(n: usize) -> T {
    T::from_usize(n).expect("count representable in scalar type")
}

/// Lossy conversion back to `f64` for reporting.
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub type C<T> = Complex<T>;

/// `1 - |z|^2` evaluated as `(1 - |z|)(1 + |z|)`.
#[inline]
pub fn one_minus_abs_sq<T: Real>(z: Complex<T>) -> T {
    let r = z.norm();
    (T::one() - r) * (T::one() + r)
}

/// `1 - t^2` for a real radius.
#[inline]
pub fn gap<T: Real>(t: T) -> T {
    (T::one() - t) * (T::one() + t)
}

/// `3√3/2`, the sharp Lipschitz constant for the classical Bloch functional.
#[inline]
pub fn three_root3_half<T: Real>() -> T {
    lit::<T>(1.5) * lit::<T>(3.0).sqrt()
}

/// `2√3/9`, the upper end of the admissible probe radius range.
#[inline]
pub fn probe_radius_limit<T: Real>() -> T {
    lit::<T>(2.0) * lit::<T>(3.0).sqrt() / lit::<T>(9.0)
}
