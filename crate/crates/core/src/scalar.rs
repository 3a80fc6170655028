//! Floating-point abstraction for the simulation kernels.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Scalar type every kernel is generic over: `f32` or `f64`.
///
/// All phases stay below ~10^4, so double precision is ample and single
/// precision remains usable for quick scans.
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// 2 as a scalar.
pub(crate) fn two<T: Scalar>() -> T {
    T::one() + T::one()
}

/// 2^k as a scalar; exact for every k < 64 since powers of two carry an
/// empty mantissa.
pub(crate) fn pow2<T: Scalar>(k: u32) -> T {
    debug_assert!(k < 64);
    T::from_u64(1u64 << k).expect("power of two fits any float")
}

/// Lossy view of a scalar for error messages.
pub(crate) fn as_f64<T: Scalar>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
