//! Monte Carlo reproduction of the twelve-case attitude error study.
//!
//! Each trial perturbs the true body vectors with isotropic Gaussian noise,
//! solves Wahba's problem and records the rotation-angle error
//! `φ = 2·asin(‖A_e − A‖_F / √8)`. Trial noise depends only on
//! `(base_seed, trial index)`, so results do not depend on how trials are
//! scheduled.

use std::fmt;
use std::io;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Mat3, Vec3};
use crate::problem::{Observation, ObservationSet};
use crate::solvers::SolverKind;

/// True attitude used by every case, entries as tabulated (3 decimals).
pub fn true_attitude() -> Mat3<f64> {
    Mat3::from_rows([[0.352, 0.864, 0.360], [-0.864, 0.152, 0.480], [0.360, -0.480, 0.800]])
}

/// [`true_attitude`] projected onto the rotation group (polar factor).
pub fn reference_attitude() -> Mat3<f64> {
    true_attitude().orthonormalized().expect("tabulated attitude is nonsingular")
}

/// Published mean errors in degrees, one per solver column.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PublishedPhi {
    pub analytic: f64,
    pub quest: f64,
    pub qmethod: f64,
}

impl PublishedPhi {
    pub fn for_solver(&self, solver: SolverKind) -> f64 {
        match solver {
            SolverKind::Analytic => self.analytic,
            SolverKind::Quest => self.quest,
            SolverKind::Davenport => self.qmethod,
        }
    }
}

/// One row of the case registry.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkCase {
    pub id: u8,
    /// Reference vectors as tabulated; some are not unit length.
    pub references: Vec<Vec3<f64>>,
    /// Per-axis measurement standard deviations, radians.
    pub sigmas: Vec<f64>,
    pub published_phi: Option<PublishedPhi>,
}

impl BenchmarkCase {
    pub fn unit_references(&self) -> Vec<Vec3<f64>> {
        self.references.iter().map(|r| *r * r.norm().recip()).collect()
    }
}

const US: f64 = 1e-6;
const CS: f64 = 0.01;

/// The twelve simulation cases.
pub fn case_table() -> Vec<BenchmarkCase> {
    let v = |x: f64, y: f64, z: f64| Vec3::new(x, y, z);
    let e1 = v(1.0, 0.0, 0.0);
    let e2 = v(0.0, 1.0, 0.0);
    let e3 = v(0.0, 0.0, 1.0);
    let phi = |analytic: f64, quest: f64, qmethod: f64| Some(PublishedPhi { analytic, quest, qmethod });
    let row = |id: u8, references: Vec<Vec3<f64>>, sigmas: Vec<f64>, published_phi: Option<PublishedPhi>| {
        BenchmarkCase { id, references, sigmas, published_phi }
    };
    vec![
        row(1, vec![e1, e2, e3], vec![US; 3], phi(6.495694956077782e-05, 6.495694956097059e-05, 6.49569495609e-05)),
        row(2, vec![e1, e2], vec![US; 2], phi(8.324164015961696e-05, 8.324223749065883e-05, 8.32422374907e-05)),
        row(3, vec![e1, e2, e3], vec![CS; 3], phi(0.649531332307863, 0.649531332307864, 0.649531332307864)),
        row(4, vec![e1, e2], vec![CS; 2], phi(0.832408546987256, 0.832408547860284, 0.832408547860284)),
        row(
            5,
            vec![v(0.6, 0.8, 0.0), v(0.8, -0.6, 0.0)],
            vec![US, CS],
            phi(0.557528700788137, 0.557528701877667, 0.557528701877667),
        ),
        row(
            6,
            vec![e1, v(0.0, 0.01, 0.0), v(0.0, 0.0, 0.01)],
            vec![US; 3],
            phi(6.495694956077782e-05, 6.495694956097059e-05, 6.49569495609e-05),
        ),
        row(
            7,
            vec![e1, v(1.0, 0.01, 0.0)],
            vec![US; 2],
            phi(8.324164015961696e-05, 8.324223749065883e-05, 8.32422374907e-05),
        ),
        row(
            8,
            vec![e1, v(1.0, 0.01, 0.0), v(1.0, 0.0, 0.01)],
            vec![CS; 3],
            phi(0.649531332307863, 0.649531332307864, 0.649531332307864),
        ),
        row(9, vec![e1, v(1.0, 0.01, 0.0)], vec![CS; 2], phi(0.832408546987256, 0.832408547860284, 0.832408547860284)),
        row(
            10,
            vec![e1, v(0.96, 0.28, 0.0), v(0.96, 0.0, 0.28)],
            vec![US, CS, CS],
            phi(1.37117449295596, 1.371174492966333, 1.371174492966333),
        ),
        row(
            11,
            vec![e1, v(0.96, 0.28, 0.0)],
            vec![US, CS],
            phi(1.68583852473236, 1.685841533993944, 1.685841533993952),
        ),
        row(
            12,
            vec![e1, v(0.96, 0.28, 0.0)],
            vec![CS, US],
            phi(1.670635461315306, 1.670644941845449, 1.670644941845431),
        ),
    ]
}

/// Looks up a case by its 1-based id.
pub fn case_by_id(id: u8) -> Option<BenchmarkCase> {
    case_table().into_iter().find(|c| c.id == id)
}

/// How simulated observations are weighted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Weighting {
    /// `aᵢ = 1/n`. Reproduces the published error table.
    #[default]
    Equal,
    /// `aᵢ = σᵢ⁻² / Σⱼ σⱼ⁻²`.
    InverseVariance,
}

impl fmt::Display for Weighting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Weighting::Equal => "equal",
            Weighting::InverseVariance => "inverse-variance",
        })
    }
}

impl FromStr for Weighting {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "equal" => Ok(Weighting::Equal),
            "inverse-variance" | "sigma" => Ok(Weighting::InverseVariance),
            other => Err(Error::InvalidConfig(format!("unknown weighting `{other}`"))),
        }
    }
}

/// Identifies the noise realization of one trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TrialSeed {
    pub base: u64,
    pub index: u64,
}

impl TrialSeed {
    /// Independent ChaCha stream per trial index under a common key.
    pub fn rng(&self) -> ChaCha20Rng {
        let mut rng = ChaCha20Rng::seed_from_u64(self.base);
        rng.set_stream(self.index);
        rng
    }
}

/// Noisy measurements `bᵢ = normalize(A rᵢ + nᵢ)` with `nᵢ ~ N(0, σᵢ² I₃)`.
pub fn sample_measurement(
    case: &BenchmarkCase,
    attitude: &Mat3<f64>,
    seed: TrialSeed,
    weighting: Weighting,
) -> ObservationSet<f64> {
    let mut rng = seed.rng();
    let mut obs = Vec::with_capacity(case.references.len());
    for (r, &sigma) in case.unit_references().into_iter().zip(&case.sigmas) {
        let noise = Vec3([(); 3].map(|_| {
            let z: f64 = StandardNormal.sample(&mut rng);
            z * sigma
        }));
        let weight = match weighting {
            Weighting::Equal => 1.0,
            Weighting::InverseVariance => (sigma * sigma).recip(),
        };
        obs.push(Observation::from_raw(r, *attitude * r + noise, weight).expect("case vectors are valid"));
    }
    ObservationSet::new(obs).expect("cases are non-empty").normalized()
}

/// Rotation-angle distance `2·asin(min(1, ‖A_e − A‖_F / √8))`, in degrees.
pub fn attitude_error_deg(estimate: &Mat3<f64>, truth: &Mat3<f64>) -> f64 {
    let ratio = ((*estimate - *truth).frobenius() / 8f64.sqrt()).min(1.0);
    (2.0 * ratio.asin()).to_degrees()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Serial,
    #[default]
    Parallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BenchOptions {
    pub weighting: Weighting,
    pub execution: Execution,
    /// Record solver wall time. Off keeps every output reproducible.
    pub measure_time: bool,
}

/// Aggregated results of one case under one solver.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseStats {
    pub case: u8,
    pub solver: SolverKind,
    pub trials: usize,
    pub mean_phi_deg: f64,
    pub std_phi_deg: f64,
    pub mean_lambda: f64,
    pub failures: usize,
    pub mean_time_ns: f64,
}

/// Result of a single trial; `None` when the solve failed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub phi_deg: f64,
    pub lambda_max: f64,
    pub time_ns: f64,
}

/// Solves one trial. Degenerate or failed solves yield `None`.
pub fn run_trial(
    case: &BenchmarkCase,
    solver: SolverKind,
    attitude: &Mat3<f64>,
    seed: TrialSeed,
    opts: &BenchOptions,
) -> Option<TrialOutcome> {
    let set = sample_measurement(case, attitude, seed, opts.weighting);
    let report = solver.solve(&set).ok()?;
    Some(TrialOutcome {
        phi_deg: attitude_error_deg(&report.attitude, attitude),
        lambda_max: report.lambda_max,
        time_ns: if opts.measure_time { report.wall_time.as_nanos() as f64 } else { 0.0 },
    })
}

/// Runs `trials` Monte Carlo trials of `case` with `solver`.
pub fn run_case(
    case: &BenchmarkCase,
    solver: SolverKind,
    trials: usize,
    base_seed: u64,
    opts: &BenchOptions,
) -> Result<CaseStats> {
    if trials == 0 {
        return Err(Error::InvalidConfig("at least one trial is required".into()));
    }
    let attitude = reference_attitude();
    let one = |i: usize| run_trial(case, solver, &attitude, TrialSeed { base: base_seed, index: i as u64 }, opts);
    let outcomes: Vec<Option<TrialOutcome>> = match opts.execution {
        Execution::Serial => (0..trials).map(one).collect(),
        Execution::Parallel => (0..trials).into_par_iter().map(one).collect(),
    };
    Ok(aggregate(case.id, solver, &outcomes))
}

/// Reduces trial outcomes in index order.
fn aggregate(case: u8, solver: SolverKind, outcomes: &[Option<TrialOutcome>]) -> CaseStats {
    let ok: Vec<&TrialOutcome> = outcomes.iter().flatten().collect();
    let n = ok.len() as f64;
    let mean = |f: fn(&TrialOutcome) -> f64| ok.iter().map(|t| f(t)).sum::<f64>() / n;
    let mean_phi = mean(|t| t.phi_deg);
    let std_phi = if ok.len() > 1 {
        (ok.iter().map(|t| (t.phi_deg - mean_phi).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    CaseStats {
        case,
        solver,
        trials: outcomes.len(),
        mean_phi_deg: mean_phi,
        std_phi_deg: std_phi,
        mean_lambda: mean(|t| t.lambda_max),
        failures: outcomes.len() - ok.len(),
        mean_time_ns: mean(|t| t.time_ns),
    }
}

/// Relative deviation of a measured mean from the published value.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PublishedComparison {
    pub published_phi_deg: f64,
    pub rel_dev: f64,
    /// `|rel_dev| > DEVIATION_FLAG_THRESHOLD`
    pub flagged: bool,
}

pub const DEVIATION_FLAG_THRESHOLD: f64 = 0.10;

pub fn compare_to_published(case: &BenchmarkCase, stats: &CaseStats) -> Option<PublishedComparison> {
    let published = case.published_phi?.for_solver(stats.solver);
    let rel_dev = stats.mean_phi_deg / published - 1.0;
    Some(PublishedComparison {
        published_phi_deg: published,
        rel_dev,
        flagged: !(rel_dev.abs() <= DEVIATION_FLAG_THRESHOLD),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverTiming {
    pub solver: SolverKind,
    pub solves: usize,
    pub mean_time_ns: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    #[serde(flatten)]
    pub stats: CaseStats,
    pub published: Option<PublishedComparison>,
}

/// Stats for every requested case × solver, plus per-solver timing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchmarkReport {
    pub trials: usize,
    pub base_seed: u64,
    pub weighting: Weighting,
    pub rows: Vec<ReportRow>,
    pub timing: Vec<SolverTiming>,
}

/// Runs every case in `cases` under every solver in `solvers`.
pub fn run_all(
    cases: &[BenchmarkCase],
    solvers: &[SolverKind],
    trials: usize,
    base_seed: u64,
    opts: &BenchOptions,
) -> Result<BenchmarkReport> {
    if solvers.is_empty() {
        return Err(Error::InvalidConfig("solver list is empty".into()));
    }
    let mut rows = Vec::with_capacity(cases.len() * solvers.len());
    for case in cases {
        for &solver in solvers {
            let stats = run_case(case, solver, trials, base_seed, opts)?;
            let published = compare_to_published(case, &stats);
            rows.push(ReportRow { stats, published });
        }
    }
    let timing = solvers
        .iter()
        .map(|&solver| {
            let (solves, total) = rows
                .iter()
                .filter(|r| r.stats.solver == solver)
                .map(|r| {
                    let n = r.stats.trials - r.stats.failures;
                    (n, r.stats.mean_time_ns * n as f64)
                })
                .fold((0, 0.0), |(a, b), (n, t)| (a + n, b + t));
            SolverTiming { solver, solves, mean_time_ns: if solves > 0 { total / solves as f64 } else { 0.0 } }
        })
        .collect();
    Ok(BenchmarkReport { trials, base_seed, weighting: opts.weighting, rows, timing })
}

/// One CSV record: the eight stats columns followed by the published comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRecord {
    pub case: u8,
    pub solver: SolverKind,
    pub trials: usize,
    pub mean_phi_deg: f64,
    pub std_phi_deg: f64,
    pub mean_lambda: f64,
    pub failures: usize,
    pub mean_time_ns: f64,
    pub published_phi_deg: Option<f64>,
    pub published_rel_dev: Option<f64>,
    pub published_flag: Option<bool>,
}

impl From<&ReportRow> for CsvRecord {
    fn from(r: &ReportRow) -> Self {
        let s = &r.stats;
        CsvRecord {
            case: s.case,
            solver: s.solver,
            trials: s.trials,
            mean_phi_deg: s.mean_phi_deg,
            std_phi_deg: s.std_phi_deg,
            mean_lambda: s.mean_lambda,
            failures: s.failures,
            mean_time_ns: s.mean_time_ns,
            published_phi_deg: r.published.map(|p| p.published_phi_deg),
            published_rel_dev: r.published.map(|p| p.rel_dev),
            published_flag: r.published.map(|p| p.flagged),
        }
    }
}

impl CsvRecord {
    pub fn stats(&self) -> CaseStats {
        CaseStats {
            case: self.case,
            solver: self.solver,
            trials: self.trials,
            mean_phi_deg: self.mean_phi_deg,
            std_phi_deg: self.std_phi_deg,
            mean_lambda: self.mean_lambda,
            failures: self.failures,
            mean_time_ns: self.mean_time_ns,
        }
    }
}

fn csv_err(e: csv::Error) -> io::Error {
    io::Error::other(e)
}

/// Writes the report as CSV with a header row. Floats use the shortest
/// representation that round-trips exactly.
pub fn write_csv<W: io::Write>(report: &BenchmarkReport, out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in &report.rows {
        w.serialize(CsvRecord::from(row)).map_err(csv_err)?;
    }
    w.flush()
}

pub fn read_csv<R: io::Read>(input: R) -> io::Result<Vec<CsvRecord>> {
    csv::Reader::from_reader(input).deserialize().collect::<Result<_, _>>().map_err(csv_err)
}

pub fn write_json<W: io::Write>(report: &BenchmarkReport, out: W) -> io::Result<()> {
    serde_json::to_writer_pretty(out, report).map_err(io::Error::other)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printed_attitude_is_nearly_orthogonal() {
        let a = true_attitude();
        assert_eq!(a.0[1][0], -0.864);
        assert!(a.orthogonality_error() <= 2e-2);
        let r = reference_attitude();
        assert!(r.orthogonality_error() <= 1e-12);
        assert!((r.det() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn case_table_rows() {
        let cases = case_table();
        assert_eq!(cases.len(), 12);
        assert_eq!(
            cases[0].references,
            vec![Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 1.0, 0.0), Vec3::new(0.0, 0.0, 1.0)]
        );
        assert_eq!(cases[0].sigmas, vec![1e-6; 3]);
        assert_eq!(cases[4].references, vec![Vec3::new(0.6, 0.8, 0.0), Vec3::new(0.8, -0.6, 0.0)]);
        assert_eq!(cases[4].sigmas, vec![1e-6, 0.01]);
        assert_eq!(cases[11].references, vec![Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.96, 0.28, 0.0)]);
        assert_eq!(cases[11].sigmas, vec![0.01, 1e-6]);
        for c in &cases {
            assert_eq!(c.references.len(), c.sigmas.len());
            assert!((2..=3).contains(&c.references.len()));
            assert!(c.sigmas.iter().all(|&s| s > 0.0));
            assert!(c.unit_references().iter().all(|r| (r.norm() - 1.0).abs() < 1e-15));
        }
        assert!(case_by_id(13).is_none());
    }

    #[test]
    fn vanishing_noise_reproduces_truth() {
        let a = reference_attitude();
        let case = BenchmarkCase { sigmas: vec![1e-30; 3], ..case_by_id(1).unwrap() };
        let set = sample_measurement(&case, &a, TrialSeed { base: 3, index: 0 }, Weighting::Equal);
        for (o, r) in set.observations().iter().zip(case.unit_references()) {
            assert!((*o.body - a * r).norm() <= 1e-12);
        }
        let rep = SolverKind::Analytic.solve(&set).unwrap();
        assert!(attitude_error_deg(&rep.attitude, &a) <= 1e-9);
    }

    #[test]
    fn samples_are_unit_and_deterministic() {
        let a = reference_attitude();
        let case = case_by_id(10).unwrap();
        let seed = TrialSeed { base: 9, index: 17 };
        let s1 = sample_measurement(&case, &a, seed, Weighting::InverseVariance);
        let s2 = sample_measurement(&case, &a, seed, Weighting::InverseVariance);
        assert_eq!(s1, s2);
        for o in s1.observations() {
            assert!((o.body.norm() - 1.0).abs() <= 1e-14);
        }
        let w: Vec<f64> = s1.observations().iter().map(|o| o.weight).collect();
        assert!(w[0] > 0.999 && w[1] < 1e-7);
        let other = sample_measurement(&case, &a, TrialSeed { base: 9, index: 18 }, Weighting::Equal);
        assert_ne!(s1.observations()[1].body, other.observations()[1].body);
    }

    #[test]
    fn noise_angle_statistics() {
        let sigma = 0.01;
        let a = reference_attitude();
        let case = BenchmarkCase {
            id: 0,
            references: vec![Vec3::new(1.0, 0.0, 0.0)],
            sigmas: vec![sigma],
            published_phi: None,
        };
        let n = 100_000;
        let truth = a * Vec3::new(1.0, 0.0, 0.0);
        let mean: f64 = (0..n)
            .map(|i| {
                let s = sample_measurement(&case, &a, TrialSeed { base: 1, index: i }, Weighting::Equal);
                s.observations()[0].body.dot(&truth).min(1.0).acos()
            })
            .sum::<f64>()
            / n as f64;
        assert!((1.15 * sigma..=1.35 * sigma).contains(&mean), "{mean}");
    }

    #[test]
    fn attitude_error_limits() {
        let a = reference_attitude();
        assert_eq!(attitude_error_deg(&a, &a), 0.0);
        // a half turn about any axis is at distance √8
        let flip = Mat3::diag(1.0, -1.0, -1.0);
        assert!((attitude_error_deg(&flip, &Mat3::identity()) - 180.0).abs() < 1e-12);
    }

    #[test]
    fn single_trial_is_bit_reproducible() {
        let case = case_by_id(3).unwrap();
        let opts = BenchOptions::default();
        let a = run_case(&case, SolverKind::Analytic, 1, 77, &opts).unwrap();
        let b = run_case(&case, SolverKind::Analytic, 1, 77, &opts).unwrap();
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
        assert_eq!(a.failures, 0);
        assert_eq!(a.std_phi_deg, 0.0);
        assert!(run_case(&case, SolverKind::Analytic, 0, 77, &opts).is_err());
    }

    #[test]
    fn failures_are_excluded_from_means() {
        let out = [
            Some(TrialOutcome { phi_deg: 1.0, lambda_max: 1.0, time_ns: 0.0 }),
            None,
            Some(TrialOutcome { phi_deg: 3.0, lambda_max: 1.0, time_ns: 0.0 }),
        ];
        let s = aggregate(1, SolverKind::Quest, &out);
        assert_eq!(s.trials, 3);
        assert_eq!(s.failures, 1);
        assert_eq!(s.mean_phi_deg, 2.0);
        assert!((s.std_phi_deg - 2f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn published_comparison_flags_large_deviation() {
        let case = case_by_id(4).unwrap();
        let mut s = CaseStats {
            case: 4,
            solver: SolverKind::Analytic,
            trials: 1,
            mean_phi_deg: 0.832408546987256 * 1.05,
            std_phi_deg: 0.0,
            mean_lambda: 1.0,
            failures: 0,
            mean_time_ns: 0.0,
        };
        assert!(!compare_to_published(&case, &s).unwrap().flagged);
        s.mean_phi_deg *= 1.1;
        assert!(compare_to_published(&case, &s).unwrap().flagged);
    }
}
