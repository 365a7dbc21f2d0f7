//! Spacecraft attitude determination from vector observations.
//!
//! Wahba's problem is reduced to the largest eigenvalue of Davenport's
//! K-matrix. This crate finds that eigenvalue three ways:
//!
//! * in closed form, as the largest real root of the characteristic quartic,
//!   factored through a depressed resolvent cubic ([`quartic`]);
//! * by Newton's method on the same quartic (QUEST style);
//! * by a Jacobi eigendecomposition of K (Davenport's q-method).
//!
//! The numeric code is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar to `f64`. [`bench`] reproduces a Monte Carlo error
//! study over twelve observation geometries.
//!
//! ```
//! use wahba::{solve_analytic, Observation, ObservationSet, Vec3d};
//!
//! let obs = [
//!     (Vec3d::new(1.0, 0.0, 0.0), Vec3d::new(0.0, -1.0, 0.0)),
//!     (Vec3d::new(0.0, 1.0, 0.0), Vec3d::new(1.0, 0.0, 0.0)),
//! ];
//! let set = ObservationSet::new(
//!     obs.iter().map(|&(r, b)| Observation::from_raw(r, b, 1.0)).collect::<Result<_, _>>()?,
//! )?
//! .normalized();
//! let report = solve_analytic(&set)?;
//! assert!((report.lambda_max - 1.0).abs() < 1e-12);
//! assert!(report.iterations == 0);
//! # Ok::<(), wahba::Error>(())
//! ```

// `!(x > 0)` deliberately routes NaN to the error branch, and the fixed-size
// matrix kernels read most clearly with explicit indices.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod bench;
pub mod corpus;
pub mod error;
pub mod linalg;
pub mod problem;
pub mod quartic;
pub mod quaternion;
pub mod scalar;
pub mod solvers;

pub use crate::error::{Error, Result};
pub use crate::linalg::{EigenDecomp4, Mat3, Mat4, SymMat4, UnitVec3, Vec3, Vec4};
pub use crate::problem::{wahba_loss, AttitudeProfile, Observation, ObservationSet, QuarticCoeffs};
pub use crate::quartic::{
    cubic_real_roots, factor_pairs, max_real_root, quartic_roots, resolvent_cubic, CubicBranch, FactorPair,
    ResolventCubic, RootSet,
};
pub use crate::quaternion::{extract_quaternion, quaternion_to_matrix, Quaternion};
pub use crate::scalar::Real;
pub use crate::solvers::{
    newton_iterate, newton_max_root, solve_analytic, solve_davenport, solve_quest_newton, solve_quest_newton_with,
    NewtonConfig, SolverKind, SolverReport,
};

pub type Vec3d = Vec3<f64>;
pub type Mat3d = Mat3<f64>;
pub type Mat4d = Mat4<f64>;
pub type SymMat4d = SymMat4<f64>;
pub type Quaterniond = Quaternion<f64>;
pub type QuarticCoeffsd = QuarticCoeffs<f64>;
pub type ObservationSetd = ObservationSet<f64>;
pub type SolverReportd = SolverReport<f64>;

pub type Vec3f = Vec3<f32>;
pub type Mat3f = Mat3<f32>;
pub type SymMat4f = SymMat4<f32>;
pub type Quaternionf = Quaternion<f32>;
pub type QuarticCoeffsf = QuarticCoeffs<f32>;
pub type ObservationSetf = ObservationSet<f32>;
