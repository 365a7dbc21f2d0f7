//! Interchangeable Wahba solvers.
//!
//! * [`solve_analytic`]: largest root of the characteristic quartic in closed form.
//! * [`solve_quest_newton`]: the same quartic, solved by Newton's method.
//! * [`solve_davenport`]: full Jacobi eigendecomposition of the K-matrix.
//!
//! All three share quaternion extraction and produce a [`SolverReport`].

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Mat3, SymMat4};
use crate::problem::{ObservationSet, QuarticCoeffs};
use crate::quartic::quartic_roots;
use crate::quaternion::{extract_quaternion, Quaternion};
use crate::scalar::Real;

/// Identifies one of the three solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Analytic,
    Quest,
    Davenport,
}

impl SolverKind {
    pub const ALL: [SolverKind; 3] = [SolverKind::Analytic, SolverKind::Quest, SolverKind::Davenport];

    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Analytic => "analytic",
            SolverKind::Quest => "quest",
            SolverKind::Davenport => "davenport",
        }
    }

    /// Runs the solver with its default settings.
    pub fn solve<T: Real>(self, set: &ObservationSet<T>) -> Result<SolverReport<T>> {
        match self {
            SolverKind::Analytic => solve_analytic(set),
            SolverKind::Quest => solve_quest_newton(set),
            SolverKind::Davenport => solve_davenport(set),
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "analytic" => Ok(SolverKind::Analytic),
            "quest" | "quest-newton" | "newton" => Ok(SolverKind::Quest),
            "davenport" | "q-method" | "qmethod" => Ok(SolverKind::Davenport),
            other => Err(Error::InvalidConfig(format!("unknown solver `{other}`"))),
        }
    }
}

/// Outcome of one Wahba solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverReport<T> {
    pub solver: SolverKind,
    pub lambda_max: T,
    pub quaternion: Quaternion<T>,
    pub attitude: Mat3<T>,
    /// `Σ aᵢ − λ_max`
    pub loss: T,
    /// Newton iterations; always 0 for the closed-form and eigen solvers.
    pub iterations: usize,
    pub eigenvalue_gap: T,
    /// The largest eigenvalue is (numerically) repeated.
    pub ambiguous: bool,
    /// Time spent finding `λ_max` and the quaternion.
    pub wall_time: Duration,
}

fn is_ambiguous<T: Real>(gap: T, lambda: T) -> bool {
    gap < T::AMBIGUITY_TOL * T::one().max(lambda.abs())
}

#[allow(clippy::too_many_arguments)]
fn finish<T: Real>(
    solver: SolverKind,
    set: &ObservationSet<T>,
    k: &SymMat4<T>,
    lambda_max: T,
    eigenvalue_gap: T,
    iterations: usize,
    quaternion: Option<Quaternion<T>>,
    started: Instant,
) -> Result<SolverReport<T>> {
    let quaternion = match quaternion {
        Some(q) => q,
        None => extract_quaternion(k, lambda_max).map_err(|e| match e {
            Error::DegenerateEigenvector { lambda_max, .. } => {
                Error::DegenerateEigenvector { lambda_max, eigenvalue_gap: eigenvalue_gap.as_f64() }
            }
            other => other,
        })?,
    };
    let wall_time = started.elapsed();
    Ok(SolverReport {
        solver,
        lambda_max,
        quaternion,
        attitude: quaternion.to_matrix(),
        loss: set.total_weight() - lambda_max,
        iterations,
        eigenvalue_gap,
        ambiguous: is_ambiguous(eigenvalue_gap, lambda_max),
        wall_time,
    })
}

/// Closed-form solver: `λ_max` is the largest real root of the
/// characteristic quartic, found through the resolvent cubic.
pub fn solve_analytic<T: Real>(set: &ObservationSet<T>) -> Result<SolverReport<T>> {
    let profile = set.profile();
    let k = profile.k_matrix();
    let started = Instant::now();
    let coeffs = QuarticCoeffs::characteristic(&profile, &k);
    let roots = quartic_roots(&coeffs)?;
    let lambda = roots.max_root()?;
    let gap = roots.top_gap().unwrap_or_else(T::zero);
    finish(SolverKind::Analytic, set, &k, lambda, gap, 0, None, started)
}

/// Settings of the Newton iteration on the characteristic quartic.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonConfig<T> {
    /// Starting point; `None` means the total observation weight (QUEST) or 1.
    pub x0: Option<T>,
    /// Relative step tolerance: stop once `|Δx| ≤ tol · max(1, |x|)`.
    pub tol: T,
    pub max_iterations: usize,
}

impl<T: Real> Default for NewtonConfig<T> {
    fn default() -> Self {
        Self { x0: None, tol: T::NEWTON_TOL, max_iterations: 100 }
    }
}

impl<T: Real> NewtonConfig<T> {
    pub fn starting_at(x0: T) -> Self {
        Self { x0: Some(x0), ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > T::zero()) {
            return Err(Error::InvalidConfig(format!("Newton tolerance must be positive, got {}", self.tol)));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("Newton needs at least one iteration".into()));
        }
        if let Some(x0) = self.x0 {
            if !x0.is_finite() {
                return Err(Error::InvalidConfig(format!("Newton start {x0} is not finite")));
            }
        }
        Ok(())
    }
}

/// Newton's method on the quartic; `observe(k, x)` sees every new iterate.
///
/// Stops when a step is within `tol·max(1, |x|)` or when `|p(x)|` falls to
/// the rounding level of its own evaluation.
///
/// Returns the final iterate and the number of updates performed.
pub fn newton_iterate<T: Real>(
    qc: &QuarticCoeffs<T>,
    cfg: &NewtonConfig<T>,
    mut observe: impl FnMut(usize, T),
) -> Result<(T, usize)> {
    cfg.validate()?;
    let tiny = T::lit(1e-300).max(T::min_positive_value());
    let mut x = cfg.x0.unwrap_or_else(T::one);
    let mut iterations = 0;
    loop {
        let p = qc.eval(x);
        if p.abs() <= roundoff_floor(qc, x) {
            return Ok((x, iterations));
        }
        if iterations == cfg.max_iterations {
            return Err(Error::NewtonNonConvergence { best: x.as_f64(), iterations });
        }
        let dp = qc.derivative(x);
        if dp.abs() <= tiny {
            return Err(Error::ZeroDerivative { at: x.as_f64() });
        }
        let step = p / dp;
        x = x - step;
        iterations += 1;
        observe(iterations, x);
        if step.abs() <= cfg.tol * T::one().max(x.abs()) {
            return Ok((x, iterations));
        }
    }
}

/// Bound on the rounding error of evaluating the quartic at `x` by Horner's
/// rule. Below it the sign of `p(x)` carries no information and further steps
/// only wander.
fn roundoff_floor<T: Real>(qc: &QuarticCoeffs<T>, x: T) -> T {
    let ax = x.abs();
    let magnitude = (((ax + qc.a.abs()) * ax + qc.b.abs()) * ax + qc.c.abs()) * ax + qc.d.abs();
    T::lit(8.0) * T::epsilon() * magnitude
}

/// Newton's method on the quartic from `cfg.x0` (default 1).
pub fn newton_max_root<T: Real>(qc: &QuarticCoeffs<T>, cfg: &NewtonConfig<T>) -> Result<(T, usize)> {
    newton_iterate(qc, cfg, |_, _| {})
}

/// Largest root of the cubic left after dividing the quartic by `(x − root)`,
/// by Newton from `root` downwards. Used only for the eigenvalue gap.
fn deflated_max_root<T: Real>(qc: &QuarticCoeffs<T>, root: T, cfg: &NewtonConfig<T>) -> T {
    let e2 = qc.a + root;
    let e1 = qc.b + root * e2;
    let e0 = qc.c + root * e1;
    let cubic = |x: T| ((x + e2) * x + e1) * x + e0;
    let slope = |x: T| (T::lit(3.0) * x + T::lit(2.0) * e2) * x + e1;
    let mut x = root;
    for _ in 0..cfg.max_iterations {
        let (f, df) = (cubic(x), slope(x));
        if f == T::zero() || df == T::zero() {
            break;
        }
        let step = f / df;
        x = x - step;
        if step.abs() <= cfg.tol * T::one().max(x.abs()) {
            break;
        }
    }
    x
}

/// QUEST-style solver with default Newton settings (start at `Σ aᵢ`).
pub fn solve_quest_newton<T: Real>(set: &ObservationSet<T>) -> Result<SolverReport<T>> {
    solve_quest_newton_with(set, &NewtonConfig::default())
}

pub fn solve_quest_newton_with<T: Real>(set: &ObservationSet<T>, cfg: &NewtonConfig<T>) -> Result<SolverReport<T>> {
    let profile = set.profile();
    let k = profile.k_matrix();
    let started = Instant::now();
    let coeffs = QuarticCoeffs::characteristic(&profile, &k);
    let cfg = NewtonConfig { x0: Some(cfg.x0.unwrap_or_else(|| set.total_weight())), ..*cfg };
    let (lambda, iterations) = newton_max_root(&coeffs, &cfg)?;
    let gap = (lambda - deflated_max_root(&coeffs, lambda, &cfg)).max(T::zero());
    finish(SolverKind::Quest, set, &k, lambda, gap, iterations, None, started)
}

/// Davenport's q-method: `λ_max` and its eigenvector straight from the
/// Jacobi eigendecomposition of K.
pub fn solve_davenport<T: Real>(set: &ObservationSet<T>) -> Result<SolverReport<T>> {
    let k = set.profile().k_matrix();
    let started = Instant::now();
    let eig = k.eigen()?;
    let lambda = eig.values[0];
    let gap = eig.values[0] - eig.values[1];
    let q = Quaternion::from_vec4(eig.vectors[0]);
    finish(SolverKind::Davenport, set, &k, lambda, gap, 0, Some(q), started)
}
