use crate::error::{Error, Result};
use crate::linalg::{SymMat4, Vec4};
use crate::scalar::Real;

/// Default sweep cap for [`SymMat4::jacobi_eigen`].
pub const DEFAULT_MAX_SWEEPS: usize = 50;

/// Eigendecomposition of a symmetric 4×4 matrix.
///
/// Eigenvalues are sorted in descending order; `vectors[k]` is the unit
/// eigenvector paired with `values[k]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenDecomp4<T> {
    pub values: [T; 4],
    pub vectors: [Vec4<T>; 4],
    pub sweeps: usize,
}

impl<T: Real> SymMat4<T> {
    /// Cyclic Jacobi eigensolver with the crate's default tolerance and sweep cap.
    pub fn eigen(&self) -> Result<EigenDecomp4<T>> {
        self.jacobi_eigen(T::JACOBI_TOL, DEFAULT_MAX_SWEEPS)
    }

    /// Cyclic Jacobi rotations until every off-diagonal magnitude is at most
    /// `tol · ‖m‖_F`.
    pub fn jacobi_eigen(&self, tol: T, max_sweeps: usize) -> Result<EigenDecomp4<T>> {
        if !(tol > T::zero()) {
            return Err(Error::InvalidConfig(format!("Jacobi tolerance must be positive, got {tol}")));
        }
        let mut a = self.as_mat().0;
        let mut v = [[T::zero(); 4]; 4];
        for (i, row) in v.iter_mut().enumerate() {
            row[i] = T::one();
        }
        let threshold = tol * self.frobenius();

        let off_max = |a: &[[T; 4]; 4]| {
            let mut m = T::zero();
            for i in 0..4 {
                for j in (i + 1)..4 {
                    m = m.max(a[i][j].abs());
                }
            }
            m
        };

        let mut sweeps = 0;
        while off_max(&a) > threshold {
            if sweeps == max_sweeps {
                return Err(Error::EigenNonConvergence { sweeps });
            }
            sweeps += 1;
            for p in 0..3 {
                for q in (p + 1)..4 {
                    if a[p][q] != T::zero() {
                        rotate(&mut a, &mut v, p, q);
                    }
                }
            }
        }

        let mut order = [0usize, 1, 2, 3];
        order.sort_by(|&i, &j| a[j][j].partial_cmp(&a[i][i]).unwrap_or(std::cmp::Ordering::Equal));
        let values = order.map(|k| a[k][k]);
        let vectors = order.map(|k| Vec4([v[0][k], v[1][k], v[2][k], v[3][k]]));
        Ok(EigenDecomp4 { values, vectors, sweeps })
    }
}

/// Annihilates `a[p][q]` with a plane rotation; accumulates the rotation into `v`.
fn rotate<T: Real>(a: &mut [[T; 4]; 4], v: &mut [[T; 4]; 4], p: usize, q: usize) {
    let two = T::lit(2.0);
    let theta = (a[q][q] - a[p][p]) / (two * a[p][q]);
    let t = if theta.is_infinite() {
        T::zero()
    } else {
        theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let c = (t * t + T::one()).sqrt().recip();
    let s = t * c;

    for k in 0..4 {
        let akp = a[k][p];
        let akq = a[k][q];
        a[k][p] = c * akp - s * akq;
        a[k][q] = s * akp + c * akq;
    }
    for k in 0..4 {
        let apk = a[p][k];
        let aqk = a[q][k];
        a[p][k] = c * apk - s * aqk;
        a[q][k] = s * apk + c * aqk;
    }
    for row in v.iter_mut() {
        let vp = row[p];
        let vq = row[q];
        row[p] = c * vp - s * vq;
        row[q] = s * vp + c * vq;
    }
}
