//! Scalar abstraction shared by every numeric type in the crate.

use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;
use std::str::FromStr;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real scalar usable for coordinates, distances and filtration values: `f32` or `f64`.
///
/// `Display` must print the shortest decimal that parses back to the same value,
/// which both primitive floats guarantee; exports rely on it for exact round trips.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Default + Debug + Display + LowerExp + FromStr + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal, rounding to the nearest representable value.
    fn lit(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("f64 converts to every Scalar")
    }

    /// Lossy conversion to `f64` for reporting.
    fn as_f64(self) -> f64 {
        ToPrimitive::to_f64(&self).expect("Scalar converts to f64")
    }

    fn from_count(n: usize) -> Self {
        <Self as FromPrimitive>::from_usize(n).expect("count converts to Scalar")
    }
}

impl<T> Scalar for T where
    T: Float
        + FromPrimitive
        + ToPrimitive
        + Default
        + Debug
        + Display
        + LowerExp
        + FromStr
        + Sum
        + Send
        + Sync
        + 'static
{
}

/// Total order on scalars that are known not to be NaN.
pub(crate) fn cmp<T: Scalar>(a: &T, b: &T) -> std::cmp::Ordering {
    a.partial_cmp(b).expect("NaN in ordered scalar comparison")
}

pub(crate) fn squared_euclidean<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .map(|(&x, &y)| {
            let d = x - y;
            d * d
        })
        .fold(T::zero(), |acc, v| acc + v)
}
