//! Wahba's problem: weighted vector observations, the attitude profile
//! matrix, Davenport's K-matrix, and its characteristic quartic.

use crate::error::{Error, Result};
use crate::linalg::{Mat3, Mat4, SymMat4, UnitVec3, Vec3};
use crate::scalar::Real;

/// One weighted pair of unit vectors: a reference direction and its
/// measurement in the body frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Observation<T> {
    pub reference: UnitVec3<T>,
    pub body: UnitVec3<T>,
    pub weight: T,
}

impl<T: Real> Observation<T> {
    pub fn new(reference: UnitVec3<T>, body: UnitVec3<T>, weight: T) -> Result<Self> {
        if !(weight > T::zero() && weight.is_finite()) {
            return Err(Error::InvalidObservation {
                index: 0,
                reason: format!("weight must be positive and finite, got {weight}"),
            });
        }
        Ok(Self { reference, body, weight })
    }

    /// Normalizes both directions before building the observation.
    pub fn from_raw(reference: Vec3<T>, body: Vec3<T>, weight: T) -> Result<Self> {
        let unit = |v: Vec3<T>, what: &str| {
            UnitVec3::normalize(v).ok_or_else(|| Error::InvalidObservation {
                index: 0,
                reason: format!("{what} vector is zero or not finite"),
            })
        };
        Self::new(unit(reference, "reference")?, unit(body, "body")?, weight)
    }
}

/// A non-empty list of observations with a positive total weight.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservationSet<T> {
    observations: Vec<Observation<T>>,
    total_weight: T,
}

impl<T: Real> ObservationSet<T> {
    pub fn new(observations: Vec<Observation<T>>) -> Result<Self> {
        if observations.is_empty() {
            return Err(Error::EmptyObservationSet);
        }
        for (index, o) in observations.iter().enumerate() {
            if !(o.weight > T::zero() && o.weight.is_finite()) {
                return Err(Error::InvalidObservation { index, reason: format!("weight {}", o.weight) });
            }
        }
        let total_weight = observations.iter().map(|o| o.weight).sum();
        Ok(Self { observations, total_weight })
    }

    /// Builds a set from `(reference, body, sigma)` triples: vectors are
    /// normalized and weights are `σᵢ⁻² / Σⱼ σⱼ⁻²`.
    pub fn from_sigmas(triples: impl IntoIterator<Item = (Vec3<T>, Vec3<T>, T)>) -> Result<Self> {
        let mut obs = Vec::new();
        for (index, (r, b, sigma)) in triples.into_iter().enumerate() {
            if !(sigma > T::zero() && sigma.is_finite()) {
                return Err(Error::InvalidObservation { index, reason: format!("sigma {sigma} must be positive") });
            }
            let o = Observation::from_raw(r, b, (sigma * sigma).recip()).map_err(|e| reindex(e, index))?;
            obs.push(o);
        }
        Ok(Self::new(obs)?.normalized())
    }

    /// Rescales the weights so that they sum to one.
    pub fn normalized(mut self) -> Self {
        let inv = self.total_weight.recip();
        for o in &mut self.observations {
            o.weight = o.weight * inv;
        }
        self.total_weight = self.observations.iter().map(|o| o.weight).sum();
        self
    }

    /// Replaces every weight by `1/n`.
    pub fn with_equal_weights(mut self) -> Self {
        let w = T::from_usize(self.observations.len()).expect("length fits scalar").recip();
        for o in &mut self.observations {
            o.weight = w;
        }
        self.total_weight = self.observations.iter().map(|o| o.weight).sum();
        self
    }

    pub fn observations(&self) -> &[Observation<T>] {
        &self.observations
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    pub fn total_weight(&self) -> T {
        self.total_weight
    }

    pub fn profile(&self) -> AttitudeProfile<T> {
        AttitudeProfile::from_observations(&self.observations).expect("observation set is non-empty")
    }
}

fn reindex(e: Error, index: usize) -> Error {
    match e {
        Error::InvalidObservation { reason, .. } => Error::InvalidObservation { index, reason },
        other => other,
    }
}

/// Attitude profile matrix `B = Σ aᵢ bᵢ rᵢᵀ` and the quantities derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttitudeProfile<T> {
    pub b: Mat3<T>,
    /// `B + Bᵀ`
    pub s: Mat3<T>,
    /// `(B₂₃ − B₃₂, B₃₁ − B₁₃, B₁₂ − B₂₁)`
    pub z: Vec3<T>,
    pub trace: T,
}

impl<T: Real> AttitudeProfile<T> {
    pub fn from_observations(observations: &[Observation<T>]) -> Result<Self> {
        if observations.is_empty() {
            return Err(Error::EmptyObservationSet);
        }
        let b = observations.iter().fold(Mat3::zeros(), |acc, o| acc + o.body.outer(&o.reference) * o.weight);
        Ok(Self::from_matrix(b))
    }

    pub fn from_matrix(b: Mat3<T>) -> Self {
        let m = &b.0;
        Self {
            b,
            s: b + b.transpose(),
            z: Vec3([m[1][2] - m[2][1], m[2][0] - m[0][2], m[0][1] - m[1][0]]),
            trace: b.trace(),
        }
    }

    /// Davenport's K-matrix: `[[S − tr(B)·I, z], [zᵀ, tr(B)]]`.
    pub fn k_matrix(&self) -> SymMat4<T> {
        let mut k = Mat4::zeros();
        for i in 0..3 {
            for j in 0..3 {
                k.0[i][j] = self.s.0[i][j];
            }
            k.0[i][i] = k.0[i][i] - self.trace;
            k.0[i][3] = self.z[i];
            k.0[3][i] = self.z[i];
        }
        k.0[3][3] = self.trace;
        SymMat4::symmetrize(k)
    }
}

/// Coefficients of the monic quartic `x⁴ + a x³ + b x² + c x + d`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct QuarticCoeffs<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: Real> QuarticCoeffs<T> {
    pub fn new(a: T, b: T, c: T, d: T) -> Self {
        Self { a, b, c, d }
    }

    /// Characteristic polynomial `det(xI − K)` of a K-matrix built from `profile`:
    /// `a = 0`, `b = −2 tr(B)² + tr(adj S) − zᵀz`, `c = −tr(adj K)`, `d = det K`.
    pub fn characteristic(profile: &AttitudeProfile<T>, k: &SymMat4<T>) -> Self {
        let two = T::lit(2.0);
        let b = -two * profile.trace * profile.trace + profile.s.adjugate().trace() - profile.z.dot(&profile.z);
        let (det, adj) = k.det_adjugate();
        Self { a: T::zero(), b, c: -adj.trace(), d: det }
    }

    /// Horner evaluation of the polynomial.
    pub fn eval(&self, x: T) -> T {
        (((x + self.a) * x + self.b) * x + self.c) * x + self.d
    }

    /// Horner evaluation of the derivative `4x³ + 3a x² + 2b x + c`.
    pub fn derivative(&self, x: T) -> T {
        let (two, three, four) = (T::lit(2.0), T::lit(3.0), T::lit(4.0));
        ((four * x + three * self.a) * x + two * self.b) * x + self.c
    }

    /// `max(1, |a|, |b|, |c|, |d|)`, the magnitude used for relative tolerances.
    pub fn scale(&self) -> T {
        [self.a, self.b, self.c, self.d].iter().fold(T::one(), |m, x| m.max(x.abs()))
    }

    pub fn is_finite(&self) -> bool {
        [self.a, self.b, self.c, self.d].iter().all(|x| x.is_finite())
    }
}

/// Wahba's loss `½ Σ aᵢ ‖bᵢ − A rᵢ‖²` for an orthogonal attitude `A`.
pub fn wahba_loss<T: Real>(attitude: &Mat3<T>, set: &ObservationSet<T>) -> Result<T> {
    let deviation = attitude.orthogonality_error();
    if !(deviation <= T::ORTHO_TOL) {
        return Err(Error::NonOrthogonalAttitude { deviation: deviation.as_f64() });
    }
    let half = T::lit(0.5);
    Ok(set.observations().iter().map(|o| o.weight * (*o.body - *attitude * *o.reference).norm_squared()).sum::<T>()
        * half)
}
