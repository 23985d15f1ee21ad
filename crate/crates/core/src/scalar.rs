//! Scalar abstraction shared by every geometric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point type the kernel can run on (`f32` or `f64`).
///
/// Tolerances are scale-free: every predicate multiplies them by the polygon
/// diameter, so the defaults below only encode how much relative precision the
/// type can be trusted with.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Relative tolerance for convexity and point classification.
    const GEOMETRIC_EPS: f64;
    /// Tolerance on `|sin|` below which two lines count as parallel.
    const PARALLEL_EPS: f64;
    /// Slack (radians) for the "successive rays at most pi apart" rule.
    const ANGLE_EPS: f64;

    /// Converts an `f64` literal. Panics only if the value is not representable
    /// at all, which never happens for finite inputs on `f32`/`f64`.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    #[inline]
    fn two() -> Self {
        Self::one() + Self::one()
    }

    #[inline]
    fn half() -> Self {
        Self::lit(0.5)
    }
}

impl Scalar for f64 {
    const GEOMETRIC_EPS: f64 = 1e-9;
    const PARALLEL_EPS: f64 = 1e-12;
    const ANGLE_EPS: f64 = 1e-9;
}

impl Scalar for f32 {
    const GEOMETRIC_EPS: f64 = 1e-5;
    const PARALLEL_EPS: f64 = 1e-6;
    const ANGLE_EPS: f64 = 1e-5;
}

/// Normalizes an angle into `[0, 2pi)`.
pub fn normalize_angle<T: Scalar>(angle: T) -> T {
    let tau = T::TAU();
    let mut a = angle % tau;
    if a < T::zero() {
        a = a + tau;
    }
    // `a + tau` can round up to exactly tau for tiny negative inputs.
    if a >= tau {
        a = a - tau;
    }
    if a < T::zero() {
        T::zero()
    } else {
        a
    }
}

/// Relative closeness test used throughout the tests and the search code.
pub fn rel_close<T: Scalar>(a: T, b: T, rel: T) -> bool {
    if a == b {
        return true;
    }
    let scale = a.abs().max(b.abs()).max(T::min_positive_value());
    (a - b).abs() <= rel * scale
}
