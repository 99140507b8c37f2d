//! Scalar abstraction: every numeric routine in this crate is generic over a
//! real floating-point type, with complex values represented as
//! [`num_complex::Complex<T>`].

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, Neg, SubAssign};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Real scalar type usable throughout the crate (`f32` or `f64`).
pub trait Scalar:
    Float
    + FloatConst
    + FromPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Neg<Output = Self>
    + Sum
    + Debug
    + Display
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from an `f64` literal.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 constant must convert into the scalar type")
    }

    /// Conversion from a nonnegative index.
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("usize must convert into the scalar type")
    }
}

impl<T> Scalar for T where
    T: Float
        + FloatConst
        + FromPrimitive
        + AddAssign
        + SubAssign
        + MulAssign
        + DivAssign
        + Neg<Output = T>
        + Sum
        + Debug
        + Display
        + Send
        + Sync
        + 'static
{
}

/// Complex value over the crate scalar.
pub type C<T> = Complex<T>;

/// `exp(i theta)` for a real angle.
pub fn unit_phase<T: Scalar>(theta: T) -> C<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// Validation tolerance: the stated double-precision floor, widened to
/// `ulps` units of the actual scalar's epsilon so the same checks stay
/// meaningful at lower precision.
pub(crate) fn tol<T: Scalar>(floor: f64, ulps: f64) -> T {
    T::of(floor).max(T::epsilon() * T::of(ulps))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn of_round_trips_small_constants() {
        assert_eq!(f64::of(0.5), 0.5);
        assert_eq!(f32::of(0.5), 0.5f32);
        assert_eq!(f64::of_usize(7), 7.0);
    }

    #[test]
    fn unit_phase_is_on_the_circle() {
        let z = unit_phase(1.2345f64);
        assert!((z.norm() - 1.0).abs() < 1e-15);
    }
}
