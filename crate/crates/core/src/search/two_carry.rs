//! Exhaustive enumeration of representative sets whose carry table has
//! exactly two distinct entries, each with its canonical classification.

use super::SearchError;
use crate::additive::{two_carry_classify, TwoCarryOutcome};
use crate::carries::carry_table;
use crate::group::{all_rep_sets, CosetSystem, RepSet};
use rayon::prelude::*;

#[derive(Clone, Debug)]
pub struct TwoCarryEntry {
    pub reps: RepSet,
    pub outcome: TwoCarryOutcome,
}

/// Every representative set with exactly two distinct carries, in
/// enumeration order, classified. Exhaustive, so the base is capped at 7
/// (7^7 sets).
pub fn enumerate_two_carry(system: &CosetSystem) -> Result<Vec<TwoCarryEntry>, SearchError> {
    let p = crate::additive::prime_square_base(system)?;
    if p > 7 {
        return Err(SearchError::BaseTooLargeForEnumeration(p));
    }
    let sets: Vec<RepSet> = all_rep_sets(system).collect();
    let entries: Vec<Option<TwoCarryEntry>> = sets
        .into_par_iter()
        .map(|reps| {
            if carry_table(system, &reps).distinct_values().len() != 2 {
                return Ok(None);
            }
            let outcome = two_carry_classify(system, &reps)?;
            Ok(Some(TwoCarryEntry { reps, outcome }))
        })
        .collect::<Result<_, SearchError>>()?;
    Ok(entries.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use std::collections::BTreeSet;

    fn digit_system(p: usize) -> CosetSystem {
        let g = FiniteGroup::cyclic(p * p).unwrap();
        let h: Vec<usize> = (0..p).map(|t| t * p).collect();
        CosetSystem::new(g, &h).unwrap()
    }

    /// All affine images c*D + d with c a unit mod p^2 and d a multiple of
    /// p, for D the standard and shifted digit sets.
    fn affine_images(p: usize) -> BTreeSet<Vec<usize>> {
        let m = p * p;
        let mut images = BTreeSet::new();
        for digits in [(0..p).collect::<Vec<_>>(), (1..=p).collect::<Vec<_>>()] {
            for c in 1..m {
                if crate::arith::gcd(c as u64, p as u64) != 1 {
                    continue;
                }
                for t in 0..p {
                    let d = t * p;
                    let mut image: Vec<usize> = digits.iter().map(|&x| (x * c + d) % m).collect();
                    image.sort_unstable();
                    images.insert(image);
                }
            }
        }
        images
    }

    #[test]
    fn base_three_enumeration_matches_affine_oracle() {
        let sys = digit_system(3);
        let entries = enumerate_two_carry(&sys).unwrap();
        let found: BTreeSet<Vec<usize>> = entries.iter().map(|e| e.reps.sorted()).collect();
        assert_eq!(found, affine_images(3));
        for e in &entries {
            assert!(matches!(e.outcome, TwoCarryOutcome::Classified { .. }));
        }
        // the balanced set is absent: it has three carries
        assert!(!found.contains(&vec![0, 1, 8]));
    }

    #[test]
    fn base_too_large_rejected() {
        let sys = digit_system(11);
        assert!(matches!(
            enumerate_two_carry(&sys),
            Err(SearchError::BaseTooLargeForEnumeration(11))
        ));
    }
}
