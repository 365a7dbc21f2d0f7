//! Randomized observation sets for validation sweeps.
//!
//! A scenario draws a uniformly random attitude, `n` uniformly random
//! reference directions and one noise level per set, log-uniform over the
//! requested range. Each observation's σ is that level times a factor in
//! `[1, 3)`, and weights are the normalized inverse variances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{Mat3, Vec3, Vec4};
use crate::problem::{Observation, ObservationSet};
use crate::quaternion::Quaternion;

#[derive(Debug, Clone)]
pub struct Scenario {
    pub set: ObservationSet<f64>,
    pub truth: Mat3<f64>,
    /// Noise level of the set; individual σᵢ lie in `[sigma, 3·sigma)`.
    pub sigma: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorpusSpec {
    pub min_observations: usize,
    pub max_observations: usize,
    pub min_sigma: f64,
    pub max_sigma: f64,
}

impl Default for CorpusSpec {
    fn default() -> Self {
        Self { min_observations: 2, max_observations: 6, min_sigma: 1e-6, max_sigma: 1e-1 }
    }
}

fn normal3(rng: &mut impl Rng) -> Vec3<f64> {
    Vec3([(); 3].map(|_| StandardNormal.sample(rng)))
}

fn random_direction(rng: &mut impl Rng) -> Vec3<f64> {
    loop {
        let v = normal3(rng);
        let n = v.norm();
        if n > 1e-6 {
            return v * n.recip();
        }
    }
}

/// Uniformly distributed rotation, from a normalized Gaussian 4-vector.
pub fn random_attitude(rng: &mut impl Rng) -> Mat3<f64> {
    let v = Vec4([(); 4].map(|_| StandardNormal.sample(rng)));
    Quaternion::from_vec4(v).to_matrix()
}

/// One scenario with `n` observations at noise level `sigma`.
pub fn scenario(rng: &mut impl Rng, n: usize, sigma: f64) -> Scenario {
    let truth = random_attitude(rng);
    let obs = (0..n)
        .map(|_| {
            let r = random_direction(rng);
            let s = sigma * rng.random_range(1.0..3.0);
            let b = truth * r + normal3(rng) * s;
            Observation::from_raw(r, b, (s * s).recip()).expect("random vectors are non-zero")
        })
        .collect();
    let set = ObservationSet::new(obs).expect("at least one observation").normalized();
    Scenario { set, truth, sigma }
}

/// `count` scenarios drawn from a single seeded stream.
pub fn random_corpus(seed: u64, count: usize, spec: &CorpusSpec) -> Vec<Scenario> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let (lo, hi) = (spec.min_sigma.ln(), spec.max_sigma.ln());
    (0..count)
        .map(|_| {
            let n = rng.random_range(spec.min_observations..=spec.max_observations);
            let sigma = rng.random_range(lo..=hi).exp();
            scenario(&mut rng, n, sigma)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_is_reproducible_and_in_range() {
        let spec = CorpusSpec::default();
        let a = random_corpus(3, 50, &spec);
        let b = random_corpus(3, 50, &spec);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.truth, y.truth);
            assert_eq!(x.sigma, y.sigma);
            assert!((2..=6).contains(&x.set.len()));
            assert!((1e-6..=1e-1).contains(&x.sigma));
            assert!((x.set.total_weight() - 1.0).abs() < 1e-14);
            assert!(x.truth.orthogonality_error() < 1e-12);
        }
    }
}
