//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
///
/// The associated constants carry the numerical thresholds used by the
/// solvers. They are scaled to the precision of each type, so the `f64`
/// values are the reference ones and `f32` gets looser counterparts.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Sum + Send + Sync + 'static
{
    /// Convergence threshold of the Jacobi sweep, relative to the Frobenius norm.
    const JACOBI_TOL: Self;
    /// Relative band around zero inside which the resolvent discriminant is treated as zero.
    const DISCRIMINANT_CLAMP: Self;
    /// Relative amount a square-root radicand may dip below zero before it is rejected.
    const RADICAND_CLAMP: Self;
    /// Tolerance on the coefficient identities of a quadratic factor pair.
    const FACTOR_TOL: Self;
    /// Minimum adjugate column norm (relative) for a usable eigenvector.
    const DEGENERATE_TOL: Self;
    /// Eigenvalue gap (relative) below which an attitude is flagged ambiguous.
    const AMBIGUITY_TOL: Self;
    /// Default relative step tolerance of the Newton iteration.
    const NEWTON_TOL: Self;
    /// Allowed deviation from unit norm for direction vectors and quaternions.
    const UNIT_TOL: Self;
    /// Allowed `‖AᵀA − I‖_F` for a matrix to be accepted as a rotation.
    const ORTHO_TOL: Self;
    /// Relative asymmetry accepted by [`crate::SymMat4`].
    const SYMMETRY_TOL: Self;

    /// Converts an `f64` literal. Every `f64` is representable (possibly rounded) in both impls.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 literal converts to scalar")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar converts to f64")
    }
}

impl Real for f64 {
    const JACOBI_TOL: Self = 1e-14;
    const DISCRIMINANT_CLAMP: Self = 1e-12;
    const RADICAND_CLAMP: Self = 1e-10;
    const FACTOR_TOL: Self = 1e-9;
    const DEGENERATE_TOL: Self = 1e-12;
    const AMBIGUITY_TOL: Self = 1e-9;
    const NEWTON_TOL: Self = 1e-13;
    const UNIT_TOL: Self = 1e-12;
    const ORTHO_TOL: Self = 1e-10;
    const SYMMETRY_TOL: Self = 1e-14;
}

impl Real for f32 {
    const JACOBI_TOL: Self = 1e-6;
    const DISCRIMINANT_CLAMP: Self = 1e-5;
    const RADICAND_CLAMP: Self = 1e-4;
    const FACTOR_TOL: Self = 1e-3;
    const DEGENERATE_TOL: Self = 1e-5;
    const AMBIGUITY_TOL: Self = 1e-4;
    const NEWTON_TOL: Self = 1e-6;
    const UNIT_TOL: Self = 1e-5;
    const ORTHO_TOL: Self = 1e-4;
    const SYMMETRY_TOL: Self = 1e-6;
}
