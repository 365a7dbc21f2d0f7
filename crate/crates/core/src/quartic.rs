//! Closed-form real roots of a quartic through its depressed resolvent cubic.
//!
//! The quartic `x⁴ + a x³ + b x² + c x + d` is split into two quadratic
//! factors `(x² + g₁x + h₁)(x² + g₂x + h₂)`. Any real root `y` of the
//! resolvent `y³ + p y + q` fixes the factors: the `gᵢ` solve
//! `g² − a g + (2b/3 − y) = 0` and the `hᵢ` solve `h² − (y + b/3) h + d = 0`.
//! Pairing the `g` and `h` roots is settled by the linear-coefficient
//! identity `g₁h₂ + g₂h₁ = c`. No step iterates.

use arrayvec::ArrayVec;

use crate::error::{Error, Result};
use crate::problem::QuarticCoeffs;
use crate::scalar::Real;

/// Which closed-form branch solves the resolvent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubicBranch {
    /// `Δ > 0`: one real root from Cardano's formula.
    OneReal,
    /// `Δ = 0` after clamping: roots `{2s, −s, −s}`.
    Repeated,
    /// `Δ < 0`: three real roots from the trigonometric form.
    ThreeReal,
}

/// Depressed cubic `y³ + p y + q` with discriminant `Δ = (q/2)² + (p/3)³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolventCubic<T> {
    pub p: T,
    pub q: T,
    pub discriminant: T,
    pub branch: CubicBranch,
}

impl<T: Real> ResolventCubic<T> {
    /// Classifies `|Δ| ≤ DISCRIMINANT_CLAMP · max((q/2)², |p/3|³)` as `Δ = 0`.
    pub fn new(p: T, q: T) -> Self {
        let half_q = q / T::lit(2.0);
        let third_p = p / T::lit(3.0);
        let qq = half_q * half_q;
        let ppp = third_p * third_p * third_p;
        let discriminant = qq + ppp;
        let band = T::DISCRIMINANT_CLAMP * qq.max(ppp.abs());
        let branch = if discriminant.abs() <= band {
            CubicBranch::Repeated
        } else if discriminant > T::zero() {
            CubicBranch::OneReal
        } else {
            CubicBranch::ThreeReal
        };
        Self { p, q, discriminant, branch }
    }

    pub fn eval(&self, y: T) -> T {
        (y * y + self.p) * y + self.q
    }
}

/// Resolvent of a quartic:
/// `p = ac − b²/3 − 4d`, `q = abc/3 − a²d − 2b³/27 − c² + 8bd/3`.
pub fn resolvent_cubic<T: Real>(qc: &QuarticCoeffs<T>) -> ResolventCubic<T> {
    let QuarticCoeffs { a, b, c, d } = *qc;
    let (two, three, four, eight) = (T::lit(2.0), T::lit(3.0), T::lit(4.0), T::lit(8.0));
    let p = a * c - b * b / three - four * d;
    let q = a * b * c / three - a * a * d - two * b * b * b / T::lit(27.0) - c * c + eight * b * d / three;
    ResolventCubic::new(p, q)
}

/// Real roots of the resolvent, sorted in descending order.
pub fn cubic_real_roots<T: Real>(rc: &ResolventCubic<T>) -> ArrayVec<T, 3> {
    let two = T::lit(2.0);
    let three = T::lit(3.0);
    let mut roots = ArrayVec::new();
    match rc.branch {
        CubicBranch::OneReal => {
            // Cardano with the larger-magnitude cube root taken first; the
            // second follows from u·v = −p/3, which avoids cancellation.
            let sq = rc.discriminant.sqrt();
            let w = -rc.q / two - rc.q.signum() * sq;
            let u = w.cbrt();
            let v = if u == T::zero() { T::zero() } else { -rc.p / (three * u) };
            roots.push(u + v);
        }
        CubicBranch::Repeated => {
            let s = (-rc.q / two).cbrt();
            roots.push(two * s);
            roots.push(-s);
            roots.push(-s);
        }
        CubicBranch::ThreeReal => {
            let third_p = rc.p / three;
            let r = (-(third_p * third_p * third_p)).sqrt();
            let cos_arg = (-rc.q / (two * r)).max(-T::one()).min(T::one());
            let theta = cos_arg.acos() / three;
            let m = two * r.cbrt();
            let step = two * T::PI() / three;
            for k in 0..3 {
                roots.push(m * (theta + step * T::from_u8(k).unwrap()).cos());
            }
        }
    }
    roots.sort_by(|x, y| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    roots
}

/// Coefficients of the quadratic factors `(x² + g₁x + h₁)(x² + g₂x + h₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FactorPair<T> {
    pub g1: T,
    pub g2: T,
    pub h1: T,
    pub h2: T,
}

impl<T: Real> FactorPair<T> {
    /// Coefficients of the product, `(g₁+g₂, g₁g₂+h₁+h₂, g₁h₂+g₂h₁, h₁h₂)`.
    pub fn expand(&self) -> QuarticCoeffs<T> {
        QuarticCoeffs {
            a: self.g1 + self.g2,
            b: self.g1 * self.g2 + self.h1 + self.h2,
            c: self.g1 * self.h2 + self.g2 * self.h1,
            d: self.h1 * self.h2,
        }
    }
}

fn clamped_sqrt<T: Real>(radicand: T, scale: T) -> Result<T> {
    if radicand >= T::zero() {
        Ok(radicand.sqrt())
    } else if radicand >= -T::RADICAND_CLAMP * scale {
        Ok(T::zero())
    } else {
        Err(Error::NegativeRadicand { value: radicand.as_f64() })
    }
}

/// Builds the factor pair from a real resolvent root `y`.
///
/// Both quadratics are first solved by square roots, with `g₁` taking the
/// positive root. A square root keeps only half the digits of a nearly
/// double root, so whichever pair is better separated is trusted and the
/// other is recomputed from the linear identity `g₁h₂ + g₂h₁ = c`. The
/// candidate whose product best reproduces the quartic is returned.
pub fn factor_pairs<T: Real>(qc: &QuarticCoeffs<T>, y: T) -> Result<FactorPair<T>> {
    let QuarticCoeffs { a, b, c, d } = *qc;
    let (two, three, four) = (T::lit(2.0), T::lit(3.0), T::lit(4.0));
    let scale = qc.scale().max(y.abs());

    // g² − a g + (2b/3 − y) = 0
    let g_rad = a * a - four * (two * b / three - y);
    let g_root = clamped_sqrt(g_rad, four * scale)?;
    let g1 = (a + g_root) / two;
    let g2 = (a - g_root) / two;

    // h² − (y + b/3) h + d = 0
    let m = y + b / three;
    let h_rad = m * m - four * d;
    let h_root = clamped_sqrt(h_rad, T::one().max(m * m).max(d.abs()))?;
    let (h_plus, h_minus) = if m >= T::zero() {
        let hp = (m + h_root) / two;
        (hp, if hp == T::zero() { T::zero() } else { d / hp })
    } else {
        let hm = (m - h_root) / two;
        (if hm == T::zero() { T::zero() } else { d / hm }, hm)
    };

    let mut candidates: ArrayVec<FactorPair<T>, 4> = ArrayVec::new();
    candidates.push(FactorPair { g1, g2, h1: h_plus, h2: h_minus });
    candidates.push(FactorPair { g1, g2, h1: h_minus, h2: h_plus });
    if g1 != g2 {
        let h1 = (c - g1 * m) / (g2 - g1);
        candidates.push(FactorPair { g1, g2, h1, h2: m - h1 });
    }
    if h_plus != h_minus {
        let g1 = (c - a * h_plus) / (h_minus - h_plus);
        candidates.push(FactorPair { g1, g2: a - g1, h1: h_plus, h2: h_minus });
    }

    let mismatch = |fp: &FactorPair<T>| {
        let e = fp.expand();
        (e.a - a).abs().max((e.b - b).abs()).max((e.c - c).abs()).max((e.d - d).abs())
    };
    let (best, residual) = candidates
        .into_iter()
        .map(|fp| (fp, mismatch(&fp)))
        .filter(|(_, r)| r.is_finite())
        .fold(None, |acc: Option<(FactorPair<T>, T)>, (fp, r)| match acc {
            Some((_, br)) if br <= r => acc,
            _ => Some((fp, r)),
        })
        .ok_or(Error::ConstraintViolation { residual: f64::NAN })?;
    if residual <= T::FACTOR_TOL * scale {
        Ok(best)
    } else {
        Err(Error::ConstraintViolation { residual: residual.as_f64() })
    }
}

/// Real roots of a quartic, with the factorization that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet<T> {
    /// Real roots with multiplicity, sorted in descending order.
    pub roots: ArrayVec<T, 4>,
    /// `complex_pair[i]` is set when quadratic factor `i` had complex roots.
    pub complex_pair: [bool; 2],
    pub factors: FactorPair<T>,
    /// The resolvent root used to build `factors`.
    pub resolvent_root: T,
}

impl<T: Real> RootSet<T> {
    /// Largest real root.
    pub fn max_root(&self) -> Result<T> {
        self.roots.first().copied().ok_or(Error::NoRealRoot)
    }

    /// Largest minus second-largest root; `None` with fewer than two roots.
    pub fn top_gap(&self) -> Option<T> {
        (self.roots.len() >= 2).then(|| self.roots[0] - self.roots[1])
    }
}

/// Real roots of `x² + g x + h`, or `None` for a complex pair.
fn quadratic_roots<T: Real>(g: T, h: T) -> Option<[T; 2]> {
    let two = T::lit(2.0);
    let disc = g * g - T::lit(4.0) * h;
    let root = clamped_sqrt(disc, T::one().max(g * g).max(h.abs())).ok()?;
    // Larger-magnitude root first, the other from the product h.
    let big = -(g + g.signum() * root) / two;
    if big == T::zero() {
        return Some([T::zero(), T::zero()]);
    }
    Some([big, h / big])
}

/// Real roots of `x⁴ + a x³ + b x² + c x + d` by the resolvent-cubic factorization.
///
/// Resolvent roots are tried from the largest down until one yields a
/// valid factor pair.
pub fn quartic_roots<T: Real>(qc: &QuarticCoeffs<T>) -> Result<RootSet<T>> {
    if !qc.is_finite() {
        return Err(Error::NoRealRoot);
    }
    let rc = resolvent_cubic(qc);
    let mut first_err = None;
    let mut chosen = None;
    for y in cubic_real_roots(&rc) {
        match factor_pairs(qc, y) {
            Ok(fp) => {
                chosen = Some((y, fp));
                break;
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    let (resolvent_root, factors) = match chosen {
        Some(c) => c,
        None => return Err(first_err.unwrap_or(Error::NoRealRoot)),
    };

    let mut roots = ArrayVec::new();
    let mut complex_pair = [false; 2];
    for (i, (g, h)) in [(factors.g1, factors.h1), (factors.g2, factors.h2)].into_iter().enumerate() {
        match quadratic_roots(g, h) {
            Some(pair) => roots.extend(pair),
            None => complex_pair[i] = true,
        }
    }
    if roots.is_empty() {
        return Err(Error::NoRealRoot);
    }
    roots.sort_by(|x: &T, y: &T| y.partial_cmp(x).unwrap_or(std::cmp::Ordering::Equal));
    Ok(RootSet { roots, complex_pair, factors, resolvent_root })
}

/// Largest element of a root set.
pub fn max_real_root<T: Real>(rs: &RootSet<T>) -> Result<T> {
    rs.max_root()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: f64, b: f64, c: f64, d: f64) -> QuarticCoeffs<f64> {
        QuarticCoeffs::new(a, b, c, d)
    }

    #[test]
    fn resolvent_of_double_pair_quartic() {
        let rc = resolvent_cubic(&q(0.0, -2.0, 0.0, 1.0));
        assert!((rc.p + 16.0 / 3.0).abs() < 1e-14);
        assert!((rc.q + 128.0 / 27.0).abs() < 1e-14);
        assert!(rc.discriminant.abs() < 1e-13);
        assert_eq!(rc.branch, CubicBranch::Repeated);
    }

    #[test]
    fn resolvent_of_x4_minus_x2() {
        let rc = resolvent_cubic(&q(0.0, -1.0, 0.0, 0.0));
        assert!((rc.p + 1.0 / 3.0).abs() < 1e-15);
        assert!((rc.q - 2.0 / 27.0).abs() < 1e-15);
        assert!(rc.discriminant.abs() < 1e-15);
        assert_eq!(rc.branch, CubicBranch::Repeated);
    }

    #[test]
    fn cubic_one_real_root() {
        let rc = ResolventCubic::new(0.0, -8.0);
        assert_eq!(rc.branch, CubicBranch::OneReal);
        assert_eq!(rc.discriminant, 16.0);
        assert_eq!(cubic_real_roots(&rc).as_slice(), &[2.0]);
    }

    #[test]
    fn cubic_repeated_roots() {
        let rc = ResolventCubic::<f64>::new(-16.0 / 3.0, -128.0 / 27.0);
        let r = cubic_real_roots(&rc);
        let expect = [8.0 / 3.0, -4.0 / 3.0, -4.0 / 3.0];
        for (x, e) in r.iter().zip(expect) {
            assert!((x - e).abs() < 1e-14, "{x} vs {e}");
            assert!(rc.eval(*x).abs() < 1e-13);
        }
    }

    #[test]
    fn cubic_three_real_roots() {
        let rc = ResolventCubic::<f64>::new(-7.0, 6.0);
        assert_eq!(rc.branch, CubicBranch::ThreeReal);
        let r = cubic_real_roots(&rc);
        for (x, e) in r.iter().zip([2.0, 1.0, -3.0]) {
            assert!((x - e).abs() < 1e-14, "{x} vs {e}");
        }
    }

    #[test]
    fn factor_pair_examples() {
        let fp = factor_pairs(&q(0.0, -2.0, 0.0, 1.0), 8.0 / 3.0).unwrap();
        assert!((fp.g1 - 2.0).abs() < 1e-14 && (fp.g2 + 2.0).abs() < 1e-14);
        assert!((fp.h1 - 1.0).abs() < 1e-14 && (fp.h2 - 1.0).abs() < 1e-14);

        let fp = factor_pairs(&q(0.0, -1.0, 0.0, 0.0), 1.0 / 3.0).unwrap();
        assert!((fp.g1 - 1.0).abs() < 1e-14 && (fp.g2 + 1.0).abs() < 1e-14);
        assert!(fp.h1.abs() < 1e-15 && fp.h2.abs() < 1e-15);
        let e = fp.expand();
        assert!((e.b + 1.0).abs() < 1e-14 && e.c.abs() < 1e-15 && e.d.abs() < 1e-15);

        let fp = factor_pairs(&q(0.0, -2.0, 0.0, 1.0), -4.0 / 3.0).unwrap();
        assert!(fp.g1.abs() < 1e-7 && fp.g2.abs() < 1e-7);
        assert!((fp.h1 + 1.0).abs() < 1e-7 && (fp.h2 + 1.0).abs() < 1e-7);
    }

    #[test]
    fn factor_pair_rejects_invalid_resolvent_root() {
        // y − 2b/3 = −5 for b = −2, y = −19/3
        let err = factor_pairs(&q(0.0, -2.0, 0.0, 1.0), -19.0 / 3.0).unwrap_err();
        assert!(matches!(err, Error::NegativeRadicand { .. }));
        // a valid-looking y that is not a resolvent root breaks the c identity
        let err = factor_pairs(&q(0.0, -2.0, 0.5, 1.0), 3.0).unwrap_err();
        assert!(matches!(err, Error::ConstraintViolation { .. }));
    }

    #[test]
    fn quartic_simple_problem() {
        let rs = quartic_roots(&q(0.0, -2.0, 0.0, 1.0)).unwrap();
        for (x, e) in rs.roots.iter().zip([1.0, 1.0, -1.0, -1.0]) {
            assert!((x - e).abs() <= 1e-12, "{x} vs {e}");
        }
        assert_eq!(rs.complex_pair, [false, false]);
        assert_eq!(max_real_root(&rs).unwrap(), 1.0);
    }

    #[test]
    fn quartic_x4_minus_x2() {
        let rs = quartic_roots(&q(0.0, -1.0, 0.0, 0.0)).unwrap();
        for (x, e) in rs.roots.iter().zip([1.0, 0.0, 0.0, -1.0]) {
            assert!((x - e).abs() <= 1e-12, "{x} vs {e}");
        }
    }

    #[test]
    fn quartic_triple_root_case_is_real() {
        let rs = quartic_roots(&q(0.0, -0.666666666666667, -0.296296296294793, -0.037037037036536)).unwrap();
        assert_eq!(rs.roots.len(), 4);
        assert!((rs.max_root().unwrap() - 0.999999999999155).abs() < 1e-9);
    }

    #[test]
    fn quartic_with_complex_pair() {
        // (x² + 1)(x² − 1) = x⁴ − 1
        let rs = quartic_roots(&q(0.0, 0.0, 0.0, -1.0)).unwrap();
        assert_eq!(rs.roots.len(), 2);
        assert!((rs.roots[0] - 1.0).abs() < 1e-14 && (rs.roots[1] + 1.0).abs() < 1e-14);
        assert_eq!(rs.complex_pair.iter().filter(|&&f| f).count(), 1);
    }

    #[test]
    fn quartic_without_real_roots() {
        // (x² + 1)(x² + 4)
        assert_eq!(quartic_roots(&q(0.0, 5.0, 0.0, 4.0)), Err(Error::NoRealRoot));
        assert_eq!(quartic_roots(&q(0.0, f64::NAN, 0.0, 4.0)), Err(Error::NoRealRoot));
    }

    #[test]
    fn quartic_with_cubic_term() {
        // (x − 1)(x − 2)(x − 3)(x + 0.5)
        let rs = quartic_roots(&q(-5.5, 8.0, -0.5, -3.0)).unwrap();
        for (x, e) in rs.roots.iter().zip([3.0, 2.0, 1.0, -0.5]) {
            assert!((x - e).abs() <= 1e-12, "{x} vs {e}");
        }
    }

    #[test]
    fn single_precision_roots() {
        let rs = quartic_roots(&QuarticCoeffs::new(0.0f32, -5.0, 0.0, 4.0)).unwrap();
        for (x, e) in rs.roots.iter().zip([2.0f32, 1.0, -1.0, -2.0]) {
            assert!((x - e).abs() <= 1e-5, "{x} vs {e}");
        }
    }
}
