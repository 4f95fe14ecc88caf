use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};
use serde::Serialize;

/// Real scalar the numerical kernels are generic over (`f32` or `f64`).
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Serialize + Send + Sync + 'static
{
    /// Converts an `f64` literal into the scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    /// `n!` as a scalar.
    fn factorial(n: usize) -> Self {
        (1..=n).fold(Self::one(), |acc, k| acc * Self::lit(k as f64))
    }

    /// Smallest denominator a ratio estimator accepts; `1e-300` clamped to the type's range.
    fn denominator_floor() -> Self {
        Self::lit(1e-300).max(Self::min_positive_value())
    }
}

impl Real for f32 {}
impl Real for f64 {}
