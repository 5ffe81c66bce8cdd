use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real floating point type the numeric kernel is generic over (`f32` or `f64`).
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + Debug + Display + Send + Sync + 'static
{
    /// Tolerance for input validation (Hermiticity, trace, positivity).
    const VALIDATION_TOL: f64;
    /// Tolerance for reconstruction checks of decompositions.
    const RECONSTRUCTION_TOL: f64;

    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable")
    }
}

impl Scalar for f64 {
    const VALIDATION_TOL: f64 = 1e-12;
    const RECONSTRUCTION_TOL: f64 = 1e-10;
}

impl Scalar for f32 {
    const VALIDATION_TOL: f64 = 1e-5;
    const RECONSTRUCTION_TOL: f64 = 1e-4;
}
