//! Scalar abstraction shared by every numerical routine in the crate.

use std::fmt::{Debug, Display};

use nalgebra::RealField;
use num_complex::Complex;
use num_traits::{FromPrimitive, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
///
/// Everything is written against `RealField` from nalgebra, which already
/// carries `sqrt`, `log2` and friends; `FromPrimitive`/`ToPrimitive` cover
/// the conversions for literals and reporting.
pub trait Real:
    RealField + Copy + FromPrimitive + ToPrimitive + Default + Display + Debug + Send + Sync + 'static
{
    /// Smallest tolerance the type can honour. Requested tolerances below
    /// this are raised to it.
    const PRECISION_FLOOR: f64;

    /// Converts an `f64` literal.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Tolerance `x`, raised to the precision floor of the type.
    #[inline]
    fn tol(x: f64) -> Self {
        Self::lit(x.max(Self::PRECISION_FLOOR))
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar")
    }
}

impl Real for f64 {
    const PRECISION_FLOOR: f64 = 0.0;
}

impl Real for f32 {
    const PRECISION_FLOOR: f64 = 1e-4;
}

/// Complex scalar over `T`.
pub type C<T> = Complex<T>;

#[inline]
pub(crate) fn c<T: Real>(re: T, im: T) -> C<T> {
    Complex::new(re, im)
}

#[inline]
pub(crate) fn cr<T: Real>(re: T) -> C<T> {
    Complex::new(re, T::zero())
}

#[inline]
pub(crate) fn modulus<T: Real>(z: C<T>) -> T {
    z.norm_sqr().sqrt()
}
