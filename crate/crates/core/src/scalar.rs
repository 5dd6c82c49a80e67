//! Scalar abstraction for the numeric parts of the toolkit.

use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Floating-point scalar: `f32` or `f64`.
///
/// Everything numeric (features, optimizers, classifiers, metrics) is generic
/// over this trait; concrete aliases live at the crate root.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + Debug
    + Display
    + Default
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Lossless-enough conversion from `usize` counts.
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar")
    }

    /// Conversion from `f64` literals (hyperparameter defaults, tolerances).
    fn from_f64_lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite f64 literal")
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn count_conversion_roundtrips() {
        assert_eq!(f64::from_count(12), 12.0);
        assert_eq!(f32::from_count(7), 7.0f32);
    }
}
