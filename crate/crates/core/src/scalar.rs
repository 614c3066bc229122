use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Floating-point scalar the numeric code is generic over.
///
/// Implemented by `f32` and `f64`. The tolerances quoted in the test suite
/// assume `f64`, which is also what the on-disk formats store.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion from a count.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar")
    }

    /// Lossy conversion from an `f64` constant.
    fn of_f64(x: f64) -> Self {
        Self::from_f64(x).expect("constant representable in scalar")
    }
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Send + Sync + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conversions_hold_for_both_float_widths() {
        assert_eq!(f64::of_usize(3), 3.0);
        assert_eq!(f32::of_usize(3), 3.0);
        assert_eq!(f64::of_f64(0.25), 0.25);
        assert_eq!(f32::of_f64(0.25), 0.25);
    }
}
