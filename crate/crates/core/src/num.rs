//! Scalar abstraction for the curve numerics.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating-point scalar the solvers are generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + LowerExp + Default + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + LowerExp + Default + 'static
{
}

/// Convert an `f64` constant into the working scalar.
#[inline]
pub fn r64<R: Real>(x: f64) -> R {
    R::from_f64(x).expect("constant not representable in scalar type")
}

/// 2π in the working scalar.
#[inline]
pub fn tau<R: Real>() -> R {
    R::TAU()
}
