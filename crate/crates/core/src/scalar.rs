//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_complex::Complex;
use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// A real floating point type the model can be evaluated in.
///
/// The associated constants are the numerical tolerances used by contract
/// checks. They scale with the precision of the type, so `f32` runs use looser
/// bounds than `f64` runs.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Default + Debug + Display + Send + Sync + 'static
{
    /// Allowed deviation of `Σ|ψ|²` from one for a state treated as normalized.
    const NORM_TOL: Self;
    /// Largest accepted `max|A - A†|` for a Hermitian operator.
    const HERMITIAN_TOL: Self;
    /// Largest imaginary part tolerated in an expectation value.
    const IMAG_TOL: Self;
    /// Raw norm drift allowed over a unitary-midpoint run.
    const DRIFT_TOL: Self;
    /// Squared norms below this are treated as the zero vector.
    const ZERO_NORM_SQ: Self;
    /// Machine epsilon, used by the eigensolver deflation test.
    const EPSILON: Self;

    /// Lossless-enough conversion from an `f64` literal.
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal representable")
    }

    /// Conversion from a signed lattice index.
    fn from_index(n: i64) -> Self {
        Self::from_i64(n).expect("lattice index representable")
    }
}

macro_rules! impl_real {
    ($t:ty, $norm:expr, $herm:expr, $imag:expr, $drift:expr, $zero:expr) => {
        impl Real for $t {
            const NORM_TOL: Self = $norm;
            const HERMITIAN_TOL: Self = $herm;
            const IMAG_TOL: Self = $imag;
            const DRIFT_TOL: Self = $drift;
            const ZERO_NORM_SQ: Self = $zero;
            const EPSILON: Self = <$t>::EPSILON;
        }
    };
}

impl_real!(f64, 1e-10, 1e-10, 1e-10, 1e-10, 1e-300);
impl_real!(f32, 1e-5, 1e-4, 1e-4, 1e-3, <f32>::MIN_POSITIVE);

/// `exp(iθ)` for a real phase.
pub(crate) fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}
