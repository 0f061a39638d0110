//! Approximate homomorphisms: exact agreement measurement, plurality repair,
//! and the constructive splitting detector.
//!
//! A map f: G1 -> G2 is an epsilon-approximate homomorphism when
//! f(g)f(g') = f(gg') for at least an epsilon fraction of ordered pairs.
//! For epsilon > 7/9 the pointwise plurality of f(gg')f(g')^-1 is a genuine
//! homomorphism disagreeing with f on at most a tau(epsilon) fraction of
//! points, where tau is the smaller root of 3x - 6x^2 = 1 - epsilon.
//!
//! The section map of a representative set is exactly a C(X)-approximate
//! homomorphism from G/H to G, so a score above 7/9 yields a complement
//! subgroup K with HK = G and H ∩ K = {1}.

use crate::carries;
use crate::group::{CosetSystem, Elem, FiniteGroup, RepSet};
use crate::rational::{ratio, to_f64, Rational};
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ApproxError {
    #[error("map has {got} entries but the domain has order {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("map value {value} at {arg} is outside the codomain")]
    ValueOutOfRange { arg: Elem, value: Elem },
    #[error("tau is only defined for epsilon > 7/9, got {0}")]
    EpsilonBelowThreshold(Rational),
    #[error(
        "split verification failed at score {score} despite the score exceeding 7/9: \
         subgroup={subgroup}, trivial_intersection={trivial_intersection}, \
         full_size={full_size}, covers_group={covers_group}"
    )]
    SplitVerificationFailed {
        score: Rational,
        subgroup: bool,
        trivial_intersection: bool,
        full_size: bool,
        covers_group: bool,
    },
}

/// Result of measuring and repairing a map f: G1 -> G2.
#[derive(Clone, Debug)]
pub struct ApproxHomReport {
    /// Exact fraction of ordered pairs with f(g)f(g') = f(gg').
    pub epsilon: Rational,
    /// Whether epsilon exceeds 7/9 (exact comparison).
    pub above_threshold: bool,
    /// Pointwise plurality of f(gg')f(g')^-1, indexed by G1 element.
    pub phi: Vec<Elem>,
    /// Strict plurality existed at every point.
    pub well_defined: bool,
    /// Points where the plurality was tied (resolved to the smallest value).
    pub tie_points: Vec<Elem>,
    /// phi verified as a genuine homomorphism over all pairs.
    pub is_homomorphism: bool,
    /// Exact fraction of g with f(g) = phi(g).
    pub agreement: Rational,
}

impl ApproxHomReport {
    pub fn disagreement(&self) -> Rational {
        ratio(1, 1) - self.agreement
    }
}

fn check_map(f: &[Elem], g1: &FiniteGroup, g2: &FiniteGroup) -> Result<(), ApproxError> {
    if f.len() != g1.order() {
        return Err(ApproxError::WrongLength {
            expected: g1.order(),
            got: f.len(),
        });
    }
    for (arg, &value) in f.iter().enumerate() {
        if value >= g2.order() {
            return Err(ApproxError::ValueOutOfRange { arg, value });
        }
    }
    Ok(())
}

/// Exact agreement fraction of f over all |G1|^2 ordered pairs.
pub fn epsilon_of(f: &[Elem], g1: &FiniteGroup, g2: &FiniteGroup) -> Result<Rational, ApproxError> {
    check_map(f, g1, g2)?;
    let n = g1.order();
    let good: usize = (0..n)
        .into_par_iter()
        .map(|g| {
            (0..n)
                .filter(|&gp| g2.mul(f[g], f[gp]) == f[g1.mul(g, gp)])
                .count()
        })
        .sum();
    Ok(ratio(good as i64, (n * n) as i64))
}

/// Smaller root of 3x - 6x^2 = 1 - epsilon, the disagreement bound for
/// plurality repair; defined for epsilon > 7/9 and below 0.0905 there.
pub fn tau(epsilon: Rational) -> Result<f64, ApproxError> {
    if epsilon <= ratio(7, 9) {
        return Err(ApproxError::EpsilonBelowThreshold(epsilon));
    }
    let e = to_f64(epsilon);
    Ok((3.0 - (24.0 * e - 15.0).sqrt()) / 12.0)
}

/// Repairs f by taking phi(g) as the most frequent value of f(gg')f(g')^-1
/// over g' in G1. Ties are broken toward the smallest element id and
/// recorded; degraded inputs yield flags, never failures.
pub fn bclr_repair(
    f: &[Elem],
    g1: &FiniteGroup,
    g2: &FiniteGroup,
) -> Result<ApproxHomReport, ApproxError> {
    check_map(f, g1, g2)?;
    let n1 = g1.order();
    let n2 = g2.order();

    let per_point: Vec<(Elem, bool)> = (0..n1)
        .into_par_iter()
        .map(|g| {
            let mut counts = vec![0u32; n2];
            for gp in 0..n1 {
                let v = g2.mul(f[g1.mul(g, gp)], g2.inv(f[gp]));
                counts[v] += 1;
            }
            let best = *counts.iter().max().unwrap();
            let value = counts.iter().position(|&c| c == best).unwrap();
            let tied = counts.iter().filter(|&&c| c == best).count() > 1;
            (value, tied)
        })
        .collect();

    let phi: Vec<Elem> = per_point.iter().map(|&(v, _)| v).collect();
    let tie_points: Vec<Elem> = per_point
        .iter()
        .enumerate()
        .filter(|(_, &(_, tied))| tied)
        .map(|(g, _)| g)
        .collect();

    let hom_failures: usize = (0..n1)
        .into_par_iter()
        .map(|g| {
            (0..n1)
                .filter(|&gp| g2.mul(phi[g], phi[gp]) != phi[g1.mul(g, gp)])
                .count()
        })
        .sum();

    let matching = (0..n1).filter(|&g| f[g] == phi[g]).count();
    let epsilon = epsilon_of(f, g1, g2)?;

    Ok(ApproxHomReport {
        epsilon,
        above_threshold: epsilon > ratio(7, 9),
        phi,
        well_defined: tie_points.is_empty(),
        tie_points,
        is_homomorphism: hom_failures == 0,
        agreement: ratio(matching as i64, n1 as i64),
    })
}

/// Verification record for a detected complement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SplitChecks {
    pub subgroup: bool,
    pub trivial_intersection: bool,
    pub full_size: bool,
    pub covers_group: bool,
}

impl SplitChecks {
    pub fn all(&self) -> bool {
        self.subgroup && self.trivial_intersection && self.full_size && self.covers_group
    }
}

#[derive(Clone, Debug)]
pub struct SplitReport {
    /// C(X) of the representative set (equals the section map's epsilon).
    pub score: Rational,
    /// Disagreement bound tau(score).
    pub tau: f64,
    /// The complement K = image(phi), sorted.
    pub complement: Vec<Elem>,
    pub checks: SplitChecks,
    pub repair: ApproxHomReport,
}

/// Outcome of the splitting detector.
#[derive(Clone, Debug)]
pub enum SplitOutcome {
    /// Score above 7/9: a verified complement subgroup.
    Split(SplitReport),
    /// Score at or below 7/9: no guarantee applies; the score is reported.
    NoGuarantee { score: Rational },
}

/// Builds the section map f: G/H -> G from a representative set and, when
/// C(X) > 7/9, repairs it and verifies that the image is a complement of H.
/// A verification failure inside the guaranteed regime is an error: it would
/// contradict the structure theorem.
pub fn split_detector(system: &CosetSystem, reps: &RepSet) -> Result<SplitOutcome, ApproxError> {
    let score = carries::carry_score(system, reps);
    if score <= ratio(7, 9) {
        return Ok(SplitOutcome::NoGuarantee { score });
    }
    let quotient = system.quotient();
    let group = system.group();
    let f: Vec<Elem> = reps.reps().to_vec();
    let repair = bclr_repair(&f, &quotient, group)?;

    let mut complement: Vec<Elem> = repair.phi.clone();
    complement.sort_unstable();
    complement.dedup();

    let in_h: Vec<Elem> = complement
        .iter()
        .copied()
        .filter(|&x| system.in_subgroup(x))
        .collect();
    let mut covered = vec![false; group.order()];
    for &h in system.subgroup() {
        for &x in &complement {
            covered[group.mul(h, x)] = true;
        }
    }
    let checks = SplitChecks {
        subgroup: group.is_subgroup(&complement),
        trivial_intersection: in_h == [group.identity()],
        full_size: complement.len() == system.index(),
        covers_group: covered.iter().all(|&c| c),
    };
    if !checks.all() {
        return Err(ApproxError::SplitVerificationFailed {
            score,
            subgroup: checks.subgroup,
            trivial_intersection: checks.trivial_intersection,
            full_size: checks.full_size,
            covers_group: checks.covers_group,
        });
    }
    Ok(SplitOutcome::Split(SplitReport {
        score,
        tau: tau(score)?,
        complement,
        checks,
        repair,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{all_rep_sets, FiniteGroup};

    fn z17_squared() -> (CosetSystem, FiniteGroup) {
        let g = FiniteGroup::product(
            FiniteGroup::cyclic(17).unwrap(),
            FiniteGroup::cyclic(17).unwrap(),
        );
        // H = {0} x Z/17, elements 0..16
        let h: Vec<Elem> = (0..17).collect();
        (CosetSystem::new(g.clone(), &h).unwrap(), g)
    }

    #[test]
    fn epsilon_of_homomorphism_is_one() {
        let g1 = FiniteGroup::cyclic(6).unwrap();
        let g2 = FiniteGroup::cyclic(12).unwrap();
        let f: Vec<Elem> = (0..6).map(|i| 2 * i).collect();
        assert_eq!(epsilon_of(&f, &g1, &g2).unwrap(), ratio(1, 1));
    }

    #[test]
    fn epsilon_of_balanced_section() {
        let g1 = FiniteGroup::cyclic(3).unwrap();
        let g2 = FiniteGroup::cyclic(9).unwrap();
        let f = vec![0, 1, 8];
        assert_eq!(epsilon_of(&f, &g1, &g2).unwrap(), ratio(7, 9));
    }

    #[test]
    fn epsilon_of_corrupted_section() {
        // f(i) = (i, [i = 1]) from Z/17 into Z/17 x Z/17 fails only when
        // g = 1, g' = 1, or g + g' = 1: 3*17 - 5 = 46 pairs
        let g1 = FiniteGroup::cyclic(17).unwrap();
        let g2 = FiniteGroup::product(
            FiniteGroup::cyclic(17).unwrap(),
            FiniteGroup::cyclic(17).unwrap(),
        );
        let f: Vec<Elem> = (0..17).map(|i| i * 17 + usize::from(i == 1)).collect();
        assert_eq!(epsilon_of(&f, &g1, &g2).unwrap(), ratio(243, 289));
    }

    #[test]
    fn epsilon_rejects_bad_maps() {
        let g1 = FiniteGroup::cyclic(3).unwrap();
        let g2 = FiniteGroup::cyclic(9).unwrap();
        assert!(matches!(
            epsilon_of(&[0, 1], &g1, &g2),
            Err(ApproxError::WrongLength { .. })
        ));
        assert!(matches!(
            epsilon_of(&[0, 1, 9], &g1, &g2),
            Err(ApproxError::ValueOutOfRange { .. })
        ));
    }

    #[test]
    fn tau_values() {
        assert_eq!(tau(ratio(1, 1)).unwrap(), 0.0);
        // approaching 7/9 from above: (3 - sqrt(11/3)) / 12 = 0.090428...
        let limit = (3.0 - (11.0f64 / 3.0).sqrt()) / 12.0;
        let near = tau(ratio(7_000_000_001, 9_000_000_000)).unwrap();
        assert!((near - limit).abs() < 1e-6, "near={near} limit={limit}");
        assert!(near < 0.0905);
        // closed form at 0.9, checked against the quadratic residual
        let t = tau(ratio(9, 10)).unwrap();
        assert!((t - 0.035912792).abs() < 1e-8);
        assert!((3.0 * t - 6.0 * t * t - 0.1).abs() < 1e-12);
        assert!(matches!(
            tau(ratio(7, 9)),
            Err(ApproxError::EpsilonBelowThreshold(_))
        ));
    }

    #[test]
    fn repair_fixes_corrupted_section() {
        let g1 = FiniteGroup::cyclic(17).unwrap();
        let g2 = FiniteGroup::product(
            FiniteGroup::cyclic(17).unwrap(),
            FiniteGroup::cyclic(17).unwrap(),
        );
        let f: Vec<Elem> = (0..17).map(|i| i * 17 + usize::from(i == 1)).collect();
        let report = bclr_repair(&f, &g1, &g2).unwrap();
        assert!(report.above_threshold);
        assert!(report.well_defined);
        assert!(report.is_homomorphism);
        let expected: Vec<Elem> = (0..17).map(|i| i * 17).collect();
        assert_eq!(report.phi, expected);
        assert_eq!(report.agreement, ratio(16, 17));
        let bound = tau(report.epsilon).unwrap();
        assert!(to_f64(report.disagreement()) <= bound);
    }

    #[test]
    fn repair_of_genuine_homomorphism_is_identity() {
        let g1 = FiniteGroup::cyclic(6).unwrap();
        let g2 = FiniteGroup::cyclic(12).unwrap();
        let f: Vec<Elem> = (0..6).map(|i| 2 * i).collect();
        let report = bclr_repair(&f, &g1, &g2).unwrap();
        assert_eq!(report.phi, f);
        assert!(report.is_homomorphism);
        assert_eq!(report.agreement, ratio(1, 1));
        assert!(report.tie_points.is_empty());
    }

    #[test]
    fn repair_below_threshold_still_reports() {
        let g1 = FiniteGroup::cyclic(3).unwrap();
        let g2 = FiniteGroup::cyclic(9).unwrap();
        let report = bclr_repair(&[0, 1, 8], &g1, &g2).unwrap();
        assert!(!report.above_threshold);
        assert_eq!(report.epsilon, ratio(7, 9));
        // outside the regime the plurality map happens to be f itself here,
        // and it is not a homomorphism
        assert_eq!(report.phi, vec![0, 1, 8]);
        assert!(!report.is_homomorphism);
    }

    #[test]
    fn split_subgroup_complement() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let sys = CosetSystem::new(g, &[0, 2, 4]).unwrap();
        let reps = RepSet::new(&sys, vec![0, 3]).unwrap();
        match split_detector(&sys, &reps).unwrap() {
            SplitOutcome::Split(report) => {
                assert_eq!(report.score, ratio(1, 1));
                assert_eq!(report.complement, vec![0, 3]);
                assert!(report.checks.all());
            }
            other => panic!("expected split, got {other:?}"),
        }
    }

    #[test]
    fn split_corrupted_product_section() {
        let (sys, g) = z17_squared();
        // reps (i, [i = 1]): element i*17 + [i = 1]
        let reps: Vec<Elem> = (0..17).map(|i| i * 17 + usize::from(i == 1)).collect();
        let reps = RepSet::new(&sys, reps).unwrap();
        match split_detector(&sys, &reps).unwrap() {
            SplitOutcome::Split(report) => {
                assert_eq!(report.score, ratio(243, 289));
                let expected: Vec<Elem> = (0..17).map(|i| i * 17).collect();
                assert_eq!(report.complement, expected);
                assert!(report.checks.all());
                assert!(to_f64(report.repair.disagreement()) <= report.tau);
                // complement is a genuine complement in G
                assert!(g.is_subgroup(&report.complement));
            }
            other => panic!("expected split, got {other:?}"),
        }
    }

    #[test]
    fn no_guarantee_below_threshold() {
        let g = FiniteGroup::cyclic(9).unwrap();
        let sys = CosetSystem::new(g, &[0, 3, 6]).unwrap();
        for reps in all_rep_sets(&sys) {
            match split_detector(&sys, &reps).unwrap() {
                SplitOutcome::NoGuarantee { score } => assert!(score <= ratio(7, 9)),
                SplitOutcome::Split(_) => panic!("Z/9 over 3(Z/9) cannot split"),
            }
        }
    }
}
