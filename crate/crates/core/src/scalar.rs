//! Scalar abstraction: the simulator is generic over the real field backing
//! the complex amplitudes (`f32` or `f64`).

use num_traits::{FromPrimitive, ToPrimitive};
use serde::{de::DeserializeOwned, Serialize};

/// Complex number over the generic real scalar.
pub type Complex<T> = num_complex::Complex<T>;

/// Dynamically sized complex vector.
pub type CVector<T> = nalgebra::DVector<Complex<T>>;

/// Dynamically sized complex matrix.
pub type CMatrix<T> = nalgebra::DMatrix<Complex<T>>;

/// Dynamically sized real matrix.
pub type RMatrix<T> = nalgebra::DMatrix<T>;

/// Real scalar usable as the amplitude field of the simulator.
///
/// `nalgebra::RealField` supplies the transcendental functions and the
/// decompositions; the `num_traits` conversions bridge to `f64`, which is the
/// precision used for random sampling and for integer-valued parameter
/// formulas so that sampled trajectories and derived parameters do not depend
/// on the scalar type.
pub trait Real:
    nalgebra::RealField
    + Copy
    + Default
    + FromPrimitive
    + ToPrimitive
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from `f64`.
    fn of(x: f64) -> Self {
        <Self as FromPrimitive>::from_f64(x).expect("finite f64 converts to scalar")
    }

    /// Lossy conversion to `f64`.
    fn f64(self) -> f64 {
        <Self as ToPrimitive>::to_f64(&self).expect("scalar converts to f64")
    }

    /// Complex number from real and imaginary parts given as `f64`.
    fn c(re: f64, im: f64) -> Complex<Self> {
        Complex::new(Self::of(re), Self::of(im))
    }

    /// Tolerance used when validating norms, Hermiticity and trace
    /// constraints at this precision.
    fn validation_tol() -> f64 {
        1e-10
    }
}

impl Real for f32 {
    fn validation_tol() -> f64 {
        1e-4
    }
}

impl Real for f64 {}

/// Real unit as a complex number.
pub fn cone<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

/// Complex zero.
pub fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

/// Imaginary unit.
pub fn ci<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}
