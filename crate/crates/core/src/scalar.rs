use std::fmt::{Debug, Display, LowerExp};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Real scalar the numeric core is generic over: `f32` or `f64`.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Debug + Display + LowerExp + Default + Sum + Send + Sync + 'static
{
    /// Converts an `f64` literal into this scalar type.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Converts to `f64` (lossless for both supported types).
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("finite scalar converts to f64")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("usize representable")
    }

    /// Default absolute tolerance for stationarity residuals: `1e-10` in double
    /// precision, a few thousand ulps in single precision.
    fn default_tolerance() -> Self {
        let eps = Self::epsilon();
        if eps < Self::lit(1e-12) {
            Self::lit(1e-10)
        } else {
            eps * Self::lit(4096.0)
        }
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
