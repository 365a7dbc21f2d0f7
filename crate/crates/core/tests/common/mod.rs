#![allow(dead_code)]

use wahba::corpus::{random_corpus, CorpusSpec, Scenario};
use wahba::{Mat3d, QuarticCoeffsd, SymMat4d};

pub const CORPUS_SEED: u64 = 0x5eed_2024;
pub const CORPUS_SIZE: usize = 1200;

pub fn corpus() -> Vec<Scenario> {
    random_corpus(CORPUS_SEED, CORPUS_SIZE, &CorpusSpec::default())
}

/// Determinant by Gaussian elimination with partial pivoting.
pub fn det_gauss(mut m: [[f64; 4]; 4]) -> f64 {
    let mut det = 1.0;
    for col in 0..4 {
        let pivot = (col..4).max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs())).unwrap();
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        let pivot_row = m[col];
        for row in m.iter_mut().skip(col + 1) {
            let f = row[col] / pivot_row[col];
            for (v, p) in row.iter_mut().zip(pivot_row).skip(col) {
                *v -= f * p;
            }
        }
    }
    det
}

/// `det(xI − K)`.
pub fn char_poly_at(k: &SymMat4d, x: f64) -> f64 {
    let mut m = [[0.0; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = if i == j { x } else { 0.0 } - k.get(i, j);
        }
    }
    det_gauss(m)
}

/// Monic quartic through `det(xI − K)` sampled at x = 0, ±1, ±2.
pub fn char_poly_interpolated(k: &SymMat4d) -> QuarticCoeffsd {
    let p = |x: f64| char_poly_at(k, x);
    let d = p(0.0);
    let b = (p(1.0) + p(-1.0)) / 2.0 - 1.0 - d;
    // p(1) − p(−1) = 2a + 2c,  p(2) − p(−2) = 16a + 4c
    let odd1 = (p(1.0) - p(-1.0)) / 2.0;
    let odd2 = (p(2.0) - p(-2.0)) / 4.0;
    let a = (odd2 - odd1) / 3.0;
    let c = odd1 - a;
    QuarticCoeffsd::new(a, b, c, d)
}

pub fn frobenius3(m: &Mat3d) -> f64 {
    m.0.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
}

/// Rotation angle between two attitude matrices, in degrees, from the chord
/// `‖X − Y‖_F = 2√2·sin(θ/2)`, which stays accurate for tiny angles.
pub fn angle_between_deg(x: &Mat3d, y: &Mat3d) -> f64 {
    let chord = frobenius3(&(*x - *y));
    (2.0 * (chord / 8f64.sqrt()).min(1.0).asin()).to_degrees()
}
