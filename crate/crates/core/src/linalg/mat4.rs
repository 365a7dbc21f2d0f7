use std::ops::{Add, Index, Mul, Sub};

use crate::error::{Error, Result};
use crate::linalg::Mat3;
use crate::scalar::Real;

/// Real 4-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec4<T>(pub [T; 4]);

impl<T: Real> Vec4<T> {
    pub fn dot(&self, other: &Self) -> T {
        (0..4).map(|i| self.0[i] * other.0[i]).sum()
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn scale(self, s: T) -> Self {
        Self(self.0.map(|x| x * s))
    }
}

impl<T: Real> Sub for Vec4<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self([0, 1, 2, 3].map(|i| self.0[i] - rhs.0[i]))
    }
}

impl<T> Index<usize> for Vec4<T> {
    type Output = T;
    fn index(&self, i: usize) -> &T {
        &self.0[i]
    }
}

/// Real 4×4 matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Mat4<T>(pub [[T; 4]; 4]);

impl<T: Real> Mat4<T> {
    pub fn zeros() -> Self {
        Self([[T::zero(); 4]; 4])
    }

    pub fn identity() -> Self {
        Self::diag([T::one(); 4])
    }

    pub fn diag(d: [T; 4]) -> Self {
        let mut m = Self::zeros();
        for (i, v) in d.into_iter().enumerate() {
            m.0[i][i] = v;
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                t.0[j][i] = self.0[i][j];
            }
        }
        t
    }

    pub fn trace(&self) -> T {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    pub fn frobenius(&self) -> T {
        self.0.iter().flatten().map(|&x| x * x).sum::<T>().sqrt()
    }

    pub fn col(&self, j: usize) -> Vec4<T> {
        Vec4([0, 1, 2, 3].map(|i| self.0[i][j]))
    }

    /// 3×3 principal minor obtained by deleting row and column `k`.
    pub fn principal_minor(&self, k: usize) -> Mat3<T> {
        let keep: Vec<usize> = (0..4).filter(|&i| i != k).collect();
        let mut m = Mat3::zeros();
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                m.0[a][b] = self.0[i][j];
            }
        }
        m
    }

    /// Determinant and adjugate by Laplace expansion over complementary
    /// 2×2 minors of the top and bottom row pairs.
    pub fn det_adjugate(&self) -> (T, Self) {
        let m = &self.0;
        let s0 = m[0][0] * m[1][1] - m[1][0] * m[0][1];
        let s1 = m[0][0] * m[1][2] - m[1][0] * m[0][2];
        let s2 = m[0][0] * m[1][3] - m[1][0] * m[0][3];
        let s3 = m[0][1] * m[1][2] - m[1][1] * m[0][2];
        let s4 = m[0][1] * m[1][3] - m[1][1] * m[0][3];
        let s5 = m[0][2] * m[1][3] - m[1][2] * m[0][3];

        let c5 = m[2][2] * m[3][3] - m[3][2] * m[2][3];
        let c4 = m[2][1] * m[3][3] - m[3][1] * m[2][3];
        let c3 = m[2][1] * m[3][2] - m[3][1] * m[2][2];
        let c2 = m[2][0] * m[3][3] - m[3][0] * m[2][3];
        let c1 = m[2][0] * m[3][2] - m[3][0] * m[2][2];
        let c0 = m[2][0] * m[3][1] - m[3][0] * m[2][1];

        let det = s0 * c5 - s1 * c4 + s2 * c3 + s3 * c2 - s4 * c1 + s5 * c0;

        let adj = [
            [
                m[1][1] * c5 - m[1][2] * c4 + m[1][3] * c3,
                -m[0][1] * c5 + m[0][2] * c4 - m[0][3] * c3,
                m[3][1] * s5 - m[3][2] * s4 + m[3][3] * s3,
                -m[2][1] * s5 + m[2][2] * s4 - m[2][3] * s3,
            ],
            [
                -m[1][0] * c5 + m[1][2] * c2 - m[1][3] * c1,
                m[0][0] * c5 - m[0][2] * c2 + m[0][3] * c1,
                -m[3][0] * s5 + m[3][2] * s2 - m[3][3] * s1,
                m[2][0] * s5 - m[2][2] * s2 + m[2][3] * s1,
            ],
            [
                m[1][0] * c4 - m[1][1] * c2 + m[1][3] * c0,
                -m[0][0] * c4 + m[0][1] * c2 - m[0][3] * c0,
                m[3][0] * s4 - m[3][1] * s2 + m[3][3] * s0,
                -m[2][0] * s4 + m[2][1] * s2 - m[2][3] * s0,
            ],
            [
                -m[1][0] * c3 + m[1][1] * c1 - m[1][2] * c0,
                m[0][0] * c3 - m[0][1] * c1 + m[0][2] * c0,
                -m[3][0] * s3 + m[3][1] * s1 - m[3][2] * s0,
                m[2][0] * s3 - m[2][1] * s1 + m[2][2] * s0,
            ],
        ];
        (det, Self(adj))
    }
}

impl<T: Real> Add for Mat4<T> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for i in 0..4 {
            for j in 0..4 {
                self.0[i][j] = self.0[i][j] + rhs.0[i][j];
            }
        }
        self
    }
}

impl<T: Real> Sub for Mat4<T> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..4 {
            for j in 0..4 {
                self.0[i][j] = self.0[i][j] - rhs.0[i][j];
            }
        }
        self
    }
}

impl<T: Real> Mul for Mat4<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..4 {
            for j in 0..4 {
                out.0[i][j] = (0..4).map(|k| self.0[i][k] * rhs.0[k][j]).sum();
            }
        }
        out
    }
}

impl<T: Real> Mul<Vec4<T>> for Mat4<T> {
    type Output = Vec4<T>;
    fn mul(self, v: Vec4<T>) -> Vec4<T> {
        Vec4([0, 1, 2, 3].map(|i| (0..4).map(|k| self.0[i][k] * v.0[k]).sum()))
    }
}

impl<T: Real> Mul<T> for Mat4<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Self(self.0.map(|row| row.map(|x| x * s)))
    }
}

/// Symmetric real 4×4 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SymMat4<T>(Mat4<T>);

impl<T: Real> SymMat4<T> {
    /// Accepts `m` if `|m_ij − m_ji| ≤ SYMMETRY_TOL · max(1, ‖m‖_F)` and
    /// stores the exactly symmetrized matrix.
    pub fn new(m: Mat4<T>) -> Result<Self> {
        let scale = m.frobenius().max(T::one());
        let mut worst = T::zero();
        for i in 0..4 {
            for j in (i + 1)..4 {
                worst = worst.max((m.0[i][j] - m.0[j][i]).abs());
            }
        }
        if worst > T::SYMMETRY_TOL * scale {
            return Err(Error::NotSymmetric { asymmetry: worst.as_f64() });
        }
        Ok(Self::symmetrize(m))
    }

    /// `(m + mᵀ)/2`, always symmetric.
    pub fn symmetrize(m: Mat4<T>) -> Self {
        let half = T::lit(0.5);
        let mut s = m;
        for i in 0..4 {
            for j in (i + 1)..4 {
                let v = (m.0[i][j] + m.0[j][i]) * half;
                s.0[i][j] = v;
                s.0[j][i] = v;
            }
        }
        Self(s)
    }

    pub fn zeros() -> Self {
        Self(Mat4::zeros())
    }

    pub fn identity() -> Self {
        Self(Mat4::identity())
    }

    pub fn diag(d: [T; 4]) -> Self {
        Self(Mat4::diag(d))
    }

    pub fn as_mat(&self) -> &Mat4<T> {
        &self.0
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.0 .0[i][j]
    }

    pub fn trace(&self) -> T {
        self.0.trace()
    }

    pub fn frobenius(&self) -> T {
        self.0.frobenius()
    }

    pub fn det_adjugate(&self) -> (T, Mat4<T>) {
        self.0.det_adjugate()
    }

    /// `λ·I − self`, still symmetric.
    pub fn shifted_negation(&self, lambda: T) -> Self {
        Self(Mat4::identity() * lambda - self.0)
    }
}

impl<T: Real> Mul<Vec4<T>> for SymMat4<T> {
    type Output = Vec4<T>;
    fn mul(self, v: Vec4<T>) -> Vec4<T> {
        self.0 * v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sym_strategy() -> impl Strategy<Value = SymMat4<f64>> {
        prop::array::uniform4(prop::array::uniform4(-5.0f64..5.0)).prop_map(|a| SymMat4::symmetrize(Mat4(a)))
    }

    #[test]
    fn det_adjugate_of_diag() {
        let (det, adj) = Mat4::diag([0.0f64, 0.0, -1.0, 1.0]).det_adjugate();
        assert_eq!(det, 0.0);
        // Each adjugate diagonal entry is the product of the other three diagonal entries.
        assert_eq!(adj, Mat4::zeros());
        let (det, adj) = Mat4::<f64>::identity().det_adjugate();
        assert_eq!(det, 1.0);
        assert_eq!(adj, Mat4::identity());
        let (det, adj) = Mat4::diag([1.0f64, 1.0, 2.0, 0.0]).det_adjugate();
        assert_eq!(det, 0.0);
        assert_eq!(adj, Mat4::diag([0.0, 0.0, 0.0, 2.0]));
    }

    #[test]
    fn rejects_asymmetric() {
        let mut m = Mat4::<f64>::identity();
        m.0[0][1] = 1e-3;
        assert!(matches!(SymMat4::new(m), Err(Error::NotSymmetric { .. })));
        m.0[1][0] = 1e-3;
        assert!(SymMat4::new(m).is_ok());
    }

    proptest! {
        #[test]
        fn adjugate4_defining_identity(m in sym_strategy()) {
            let (det, adj) = m.det_adjugate();
            let scale = m.frobenius().max(1.0).powi(4);
            let resid = *m.as_mat() * adj - Mat4::identity() * det;
            prop_assert!(resid.frobenius() <= 1e-11 * scale);
        }

        #[test]
        fn adjugate4_trace_is_sum_of_principal_minors(m in sym_strategy()) {
            let (_, adj) = m.det_adjugate();
            let minors: f64 = (0..4).map(|k| m.as_mat().principal_minor(k).det()).sum();
            let scale = m.frobenius().max(1.0).powi(3);
            prop_assert!((adj.trace() - minors).abs() <= 1e-12 * scale);
        }
    }
}
