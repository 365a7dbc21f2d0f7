//! Attitude quaternions and their extraction from the K-matrix.

use crate::error::{Error, Result};
use crate::linalg::{Mat3, SymMat4, Vec3, Vec4};
use crate::scalar::Real;

/// Unit attitude quaternion, vector part first and scalar part last.
///
/// For a rotation by `θ` about the unit axis `e` the vector part is
/// `e·sin(θ/2)` and the scalar part is `cos(θ/2)`. The layout matches the
/// K-matrix, whose last row and column carry `tr(B)` and `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion<T> {
    pub vector: Vec3<T>,
    pub scalar: T,
}

impl<T: Real> Quaternion<T> {
    pub fn identity() -> Self {
        Self { vector: Vec3::zeros(), scalar: T::one() }
    }

    pub fn from_axis_angle(axis: Vec3<T>, angle: T) -> Self {
        let half = angle / T::lit(2.0);
        let n = axis.norm();
        Self { vector: axis * (half.sin() / n), scalar: half.cos() }
    }

    /// Interprets `[q₁, q₂, q₃, q₄]` as (vector, scalar), normalizes it and
    /// flips the sign so that the scalar part is non-negative.
    pub fn from_vec4(v: Vec4<T>) -> Self {
        let v = v.scale(v.norm().recip());
        let sign = if v[3] < T::zero() { -T::one() } else { T::one() };
        Self { vector: Vec3([v[0], v[1], v[2]]) * sign, scalar: v[3] * sign }
    }

    pub fn to_vec4(&self) -> Vec4<T> {
        Vec4([self.vector[0], self.vector[1], self.vector[2], self.scalar])
    }

    pub fn norm(&self) -> T {
        self.to_vec4().norm()
    }

    pub fn dot(&self, other: &Self) -> T {
        self.to_vec4().dot(&other.to_vec4())
    }

    /// Attitude matrix `A = (q₄² − ‖q‖²) I + 2 q qᵀ − 2 q₄ [q×]`, which maps
    /// reference-frame vectors into the body frame.
    pub fn to_matrix(&self) -> Mat3<T> {
        let two = T::lit(2.0);
        let q = self.vector;
        let s = self.scalar;
        let cross = Mat3::from_rows([[T::zero(), -q[2], q[1]], [q[2], T::zero(), -q[0]], [-q[1], q[0], T::zero()]]);
        Mat3::identity() * (s * s - q.norm_squared()) + q.outer(&q) * two - cross * (two * s)
    }
}

/// Standalone form of [`Quaternion::to_matrix`].
pub fn quaternion_to_matrix<T: Real>(q: &Quaternion<T>) -> Mat3<T> {
    q.to_matrix()
}

/// Eigenvector of `k` for the eigenvalue `lambda`, read off the adjugate of
/// `λI − K`.
///
/// For a simple eigenvalue the adjugate has rank one and every non-zero
/// column is parallel to the eigenvector; the column of largest norm is
/// used. The eigenvector is then pushed once more through the adjugate,
/// which suppresses the component left behind by an inexact `lambda`.
pub fn extract_quaternion<T: Real>(k: &SymMat4<T>, lambda: T) -> Result<Quaternion<T>> {
    let m = k.shifted_negation(lambda);
    let (_, adj) = m.det_adjugate();
    let scale = m.frobenius().max(T::one());
    let (best, best_norm) =
        (0..4).map(|j| (j, adj.col(j).norm())).fold((0, T::zero()), |acc, (j, n)| if n > acc.1 { (j, n) } else { acc });
    if !(best_norm > T::DEGENERATE_TOL * scale * scale * scale) {
        return Err(Error::DegenerateEigenvector { lambda_max: lambda.as_f64(), eigenvalue_gap: 0.0 });
    }
    let v = adj.col(best).scale(best_norm.recip());
    let refined = adj * v;
    let v = if refined.norm() > T::zero() { refined } else { v };
    Ok(Quaternion::from_vec4(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_attitude_from_diagonal_k() {
        let k = SymMat4::diag([0.0f64, 0.0, -1.0, 1.0]);
        let q = extract_quaternion(&k, 1.0).unwrap();
        assert_eq!(q, Quaternion::identity());
    }

    #[test]
    fn repeated_top_eigenvalue_is_degenerate() {
        let k = SymMat4::diag([1.0f64, -1.0, -1.0, 1.0]);
        let err = extract_quaternion(&k, 1.0).unwrap_err();
        assert!(matches!(err, Error::DegenerateEigenvector { .. }));
    }

    #[test]
    fn identity_quaternion_gives_identity_matrix() {
        assert_eq!(Quaternion::<f64>::identity().to_matrix(), Mat3::identity());
    }

    #[test]
    fn quarter_turn_about_z() {
        let h = std::f64::consts::FRAC_PI_4;
        let q = Quaternion { vector: Vec3::new(0.0, 0.0, h.sin()), scalar: h.cos() };
        let x = quaternion_to_matrix(&q) * Vec3::new(1.0, 0.0, 0.0);
        assert!(x[0].abs() < 1e-12);
        assert!((x[1].abs() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn sign_is_canonical() {
        let q = Quaternion::from_vec4(Vec4([0.0f64, 0.0, 0.6, -0.8]));
        assert_eq!(q.scalar, 0.8);
        assert_eq!(q.vector, Vec3::new(0.0, 0.0, -0.6));
    }
}
