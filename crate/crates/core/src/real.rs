use core::fmt::Debug;
use num_traits::{Float, FloatConst, FromPrimitive};

/// Scalar abstraction used by every closed form in this crate.
///
/// The blanket impl covers `f32` and `f64`; nothing here requires more than
/// `num_traits::Float` plus the ability to lift literal constants.
pub trait Real: Float + FloatConst + FromPrimitive + Debug {}

impl<T> Real for T where T: Float + FloatConst + FromPrimitive + Debug {}

/// Lifts an exactly representable `f64` literal into `T`.
pub(crate) fn cst<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal constant fits the scalar type")
}

/// Diagnostic value for error payloads, which are always reported in `f64`.
pub(crate) fn diag<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
