//! Discrete Fourier coefficients of subsets of Z/m, the large-coefficient
//! lower bound, and arc-concentration on the unit circle.

use super::sets::ModSet;
use super::AdditiveError;
use crate::rational::{ratio, to_f64, Rational};
use num_complex::Complex64;
use std::f64::consts::{PI, TAU};

/// Slack applied on the favorable side of float comparisons so rounding can
/// never refute an analytic bound.
pub const FLOAT_SLACK: f64 = 1e-9;

/// A-hat(r) = sum over a in A of e^(2*pi*i*r*a/m).
pub fn coefficient(a: &ModSet, r: usize) -> Complex64 {
    let m = a.modulus();
    a.elems()
        .iter()
        .map(|&x| {
            let angle = TAU * ((r % m) * x % m) as f64 / m as f64;
            Complex64::new(angle.cos(), angle.sin())
        })
        .sum()
}

/// All m coefficients plus the largest nonzero-frequency magnitude.
#[derive(Clone, Debug)]
pub struct FourierProfile {
    pub modulus: usize,
    pub coefficients: Vec<Complex64>,
    /// argmax over r != 0 of |A-hat(r)|, smallest r on ties.
    pub max_r: usize,
    pub max_magnitude: f64,
}

impl FourierProfile {
    /// (1/m) * sum |A-hat(r)|^2, which must equal |A|.
    pub fn parseval_sum(&self) -> f64 {
        self.coefficients.iter().map(|c| c.norm_sqr()).sum::<f64>() / self.modulus as f64
    }
}

pub fn fourier_profile(a: &ModSet) -> Result<FourierProfile, AdditiveError> {
    if a.is_empty() {
        return Err(AdditiveError::EmptySet);
    }
    let m = a.modulus();
    let coefficients: Vec<Complex64> = (0..m).map(|r| coefficient(a, r)).collect();
    let (max_r, max_magnitude) = argmax_nonzero(&coefficients);
    Ok(FourierProfile {
        modulus: m,
        coefficients,
        max_r,
        max_magnitude,
    })
}

fn argmax_nonzero(coefficients: &[Complex64]) -> (usize, f64) {
    let mut best_r = 1;
    let mut best = f64::NEG_INFINITY;
    for (r, c) in coefficients.iter().enumerate().skip(1) {
        let mag = c.norm();
        if mag > best {
            best = mag;
            best_r = r;
        }
    }
    (best_r, best)
}

/// (r*, |A-hat(r*)|) over r != 0, smallest r on ties.
pub fn max_nonzero_fourier(a: &ModSet) -> Result<(usize, f64), AdditiveError> {
    if a.is_empty() {
        return Err(AdditiveError::EmptySet);
    }
    if a.modulus() == 1 {
        return Err(AdditiveError::DegenerateFullSet(1));
    }
    let m = a.modulus();
    let coefficients: Vec<Complex64> = (0..m).map(|r| coefficient(a, r)).collect();
    Ok(argmax_nonzero(&coefficients))
}

#[derive(Clone, Debug)]
pub struct FourierBound {
    pub alpha1: Rational,
    pub alpha2: Rational,
    pub bound: f64,
    pub attained: f64,
    pub attained_r: usize,
    pub holds: bool,
}

/// With |A| = alpha1*m and |A + A| = alpha2*m, some nonzero frequency has
/// |A-hat(r)| >= |A| * sqrt(alpha1(1 - alpha2) / (alpha2(1 - alpha1))).
/// Checked with FLOAT_SLACK on the favorable side.
pub fn large_coefficient_check(a: &ModSet) -> Result<FourierBound, AdditiveError> {
    if a.is_empty() {
        return Err(AdditiveError::EmptySet);
    }
    let m = a.modulus();
    if a.len() == m {
        return Err(AdditiveError::DegenerateFullSet(m));
    }
    let alpha1 = ratio(a.len() as i64, m as i64);
    let alpha2 = ratio(a.sumset(a)?.len() as i64, m as i64);
    let ratio_val =
        to_f64(alpha1) * (1.0 - to_f64(alpha2)) / (to_f64(alpha2) * (1.0 - to_f64(alpha1)));
    let bound = a.len() as f64 * ratio_val.sqrt();
    let (attained_r, attained) = max_nonzero_fourier(a)?;
    Ok(FourierBound {
        alpha1,
        alpha2,
        bound,
        attained,
        attained_r,
        holds: attained + FLOAT_SLACK >= bound,
    })
}

#[derive(Clone, Debug)]
pub enum ArcOutcome {
    /// An arc [start, start + length] containing more than n points.
    Found {
        start: f64,
        length: f64,
        count: usize,
        needed: usize,
    },
    /// |z1 + ... + zm| did not exceed 2n - m + 2(m - n)cos(phi/2).
    HypothesisNotMet { sum_abs: f64, threshold: f64 },
}

fn unit_angles(points: &[Complex64]) -> Result<Vec<f64>, AdditiveError> {
    points
        .iter()
        .enumerate()
        .map(|(index, z)| {
            let norm = z.norm();
            if (norm - 1.0).abs() > FLOAT_SLACK {
                Err(AdditiveError::OffCircle {
                    index,
                    modulus: norm,
                })
            } else {
                Ok(z.arg().rem_euclid(TAU))
            }
        })
        .collect()
}

/// Best closed arc of the given length: (start angle, points covered),
/// earliest start among maxima. Rotating-window sweep over point angles.
fn best_arc(angles: &[f64], length: f64) -> (f64, usize) {
    let mut sorted = angles.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let m = sorted.len();
    let mut best = (sorted[0], 0usize);
    let mut j = 0usize;
    for i in 0..m {
        let start = sorted[i];
        if j < i {
            j = i;
        }
        // extend the window over the doubled circle
        while j + 1 - i <= m {
            let angle = if j < m {
                sorted[j]
            } else {
                sorted[j - m] + TAU
            };
            if angle <= start + length + FLOAT_SLACK * 1e-3 {
                j += 1;
            } else {
                break;
            }
        }
        let count = j - i;
        if count > best.1 {
            best = (start, count);
        }
    }
    best
}

/// When |z1 + ... + zm| > 2n - m + 2(m - n)cos(phi/2), exhibits an arc of
/// length phi containing more than n of the unit-circle points. The
/// hypothesis failing is an ordinary outcome; the arc failing to exist under
/// a satisfied hypothesis is an invariant violation.
pub fn arc_concentration(
    points: &[Complex64],
    phi: f64,
    n: usize,
) -> Result<ArcOutcome, AdditiveError> {
    if points.is_empty() {
        return Err(AdditiveError::EmptySet);
    }
    if !(phi > 0.0 && phi <= TAU) {
        return Err(AdditiveError::BadArcLength(phi));
    }
    let angles = unit_angles(points)?;
    let m = points.len();
    let sum_abs = points.iter().sum::<Complex64>().norm();
    let threshold = 2.0 * n as f64 - m as f64 + 2.0 * (m as f64 - n as f64) * (phi / 2.0).cos();
    if sum_abs <= threshold {
        return Ok(ArcOutcome::HypothesisNotMet { sum_abs, threshold });
    }
    let (start, count) = best_arc(&angles, phi);
    if count <= n {
        return Err(AdditiveError::InvariantViolation(format!(
            "arc bound: |sum| = {sum_abs} exceeds {threshold} but the best arc of \
             length {phi} holds only {count} of {m} points (needed more than {n})"
        )));
    }
    Ok(ArcOutcome::Found {
        start,
        length: phi,
        count,
        needed: n + 1,
    })
}

/// The half-circle specialization: the best arc of length pi, which always
/// contains at least (m + |z1 + ... + zm|)/2 points.
pub fn half_circle_arc(points: &[Complex64]) -> Result<(f64, usize), AdditiveError> {
    if points.is_empty() {
        return Err(AdditiveError::EmptySet);
    }
    let angles = unit_angles(points)?;
    let (start, count) = best_arc(&angles, PI);
    let sum_abs = points.iter().sum::<Complex64>().norm();
    let needed = (points.len() as f64 + sum_abs) / 2.0;
    if (count as f64) + FLOAT_SLACK < needed {
        return Err(AdditiveError::InvariantViolation(format!(
            "half-circle arc holds {count} points, below (m + |sum|)/2 = {needed}"
        )));
    }
    Ok((start, count))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(m: usize, elems: &[usize]) -> ModSet {
        ModSet::new(m, elems.to_vec()).unwrap()
    }

    #[test]
    fn coefficient_closed_forms() {
        let a = set(25, &[0, 1, 2, 3, 4]);
        // multiples of the subgroup frequency vanish on transversal intervals
        assert!(coefficient(&a, 5).norm() < 1e-9);
        // geometric sum: |A-hat(1)| = sin(pi/5) / sin(pi/25)
        let expected = (PI / 5.0).sin() / (PI / 25.0).sin();
        assert!((coefficient(&a, 1).norm() - expected).abs() < 1e-9);

        // full group: every nonzero coefficient vanishes
        let full = set(12, &(0..12).collect::<Vec<_>>());
        for r in 1..12 {
            assert!(coefficient(&full, r).norm() < 1e-9);
        }
    }

    #[test]
    fn profile_and_parseval() {
        let a = set(25, &[0, 1, 2, 3, 4]);
        let profile = fourier_profile(&a).unwrap();
        assert_eq!(profile.coefficients[0].re.round() as i64, 5);
        assert_eq!(profile.max_r, 1);
        let rel = (profile.parseval_sum() - 5.0).abs() / 5.0;
        assert!(rel < 1e-6);
    }

    #[test]
    fn large_coefficient_bound_cases() {
        let a = set(25, &[0, 1, 2, 3, 4]);
        let fb = large_coefficient_check(&a).unwrap();
        assert!((fb.bound - 10.0 / 3.0).abs() < 1e-9);
        // geometric-sum closed form sin(pi/5)/sin(pi/25)
        assert!((fb.attained - 4.689779682).abs() < 1e-7);
        assert!(fb.holds);

        let bal = set(9, &[0, 1, 8]);
        let fb = large_coefficient_check(&bal).unwrap();
        let expected_bound = 3.0 * (2.0f64 / 5.0).sqrt();
        assert!((fb.bound - expected_bound).abs() < 1e-9);
        let expected_attained = 1.0 + 2.0 * (TAU / 9.0).cos();
        assert!((fb.attained - expected_attained).abs() < 1e-9);
        assert!(fb.holds);

        // subgroup: A + A = A, bound = |A|, attained exactly at r = p
        let sub = set(25, &[0, 5, 10, 15, 20]);
        let fb = large_coefficient_check(&sub).unwrap();
        assert!((fb.bound - 5.0).abs() < 1e-9);
        assert!((fb.attained - 5.0).abs() < 1e-9);
        assert!(fb.holds);

        assert!(matches!(
            large_coefficient_check(&set(4, &[0, 1, 2, 3])),
            Err(AdditiveError::DegenerateFullSet(4))
        ));
    }

    #[test]
    fn arcs() {
        // all points at 1: any arc holds all of them
        let ones = vec![Complex64::new(1.0, 0.0); 8];
        match arc_concentration(&ones, PI, 7).unwrap() {
            ArcOutcome::Found { count, .. } => assert_eq!(count, 8),
            other => panic!("expected arc, got {other:?}"),
        }

        // m-th roots of unity sum to zero: a half-circle arc holding more
        // than ceil(m/2) points is not guaranteed, and the hypothesis
        // correctly fails; at n = 4 it holds and the arc appears
        let roots: Vec<Complex64> = (0..9)
            .map(|k| Complex64::from_polar(1.0, TAU * k as f64 / 9.0))
            .collect();
        match arc_concentration(&roots, PI, 5).unwrap() {
            ArcOutcome::HypothesisNotMet { sum_abs, .. } => assert!(sum_abs < 1e-9),
            other => panic!("expected hypothesis failure, got {other:?}"),
        }
        match arc_concentration(&roots, PI, 4).unwrap() {
            ArcOutcome::Found { count, .. } => assert_eq!(count, 5),
            other => panic!("expected arc, got {other:?}"),
        }
        let (_, count) = half_circle_arc(&roots).unwrap();
        assert!(count >= 5);

        // interval points: arc of length pi catches all five
        let pts: Vec<Complex64> = (0..5)
            .map(|a| Complex64::from_polar(1.0, TAU * a as f64 / 25.0))
            .collect();
        let sum_abs = pts.iter().sum::<Complex64>().norm();
        let (_, count) = half_circle_arc(&pts).unwrap();
        assert_eq!(count, 5);
        assert!(count as f64 >= (5.0 + sum_abs) / 2.0 - 1e-9);

        // off-circle points rejected
        let bad = vec![Complex64::new(0.5, 0.0)];
        assert!(matches!(
            arc_concentration(&bad, PI, 0),
            Err(AdditiveError::OffCircle { .. })
        ));
    }
}
