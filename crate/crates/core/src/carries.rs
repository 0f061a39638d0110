//! Carry values, carry tables, and carry scores for representative sets.
//!
//! For coset representatives X of a normal subgroup H in G and x, y in X,
//! the carry is the unique h in H with x*y = x12*h, where x12 in X represents
//! the coset of x*y. A nontrivial carry occurs exactly when x*y is not itself
//! a representative. The carry score C(X) is the fraction of ordered pairs
//! whose product stays in X, kept as an exact rational.
//!
//! The integer model (b distinct integers, one per residue class mod b)
//! covers the same questions for bZ inside Z, where sums never wrap.

use crate::group::{CosetSystem, Elem, RepSet};
use crate::rational::Rational;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CarriesError {
    #[error("{0} is not one of the chosen representatives")]
    NotARepresentative(Elem),
    #[error("duplicate entry {0} in representative list")]
    DuplicateEntry(i64),
    #[error("system is not of the form b(Z/b^2) inside Z/b^2 with b >= 2")]
    NotDigitSystem,
}

/// The k x k matrix of carries for a representative set, with derived
/// statistics. Entries are indexed by coset id.
#[derive(Clone, Debug)]
pub struct CarryTable {
    index: usize,
    entries: Vec<Elem>,
    nontrivial: usize,
    distinct: Vec<Elem>,
    score: Rational,
}

impl CarryTable {
    pub fn index(&self) -> usize {
        self.index
    }

    /// Carry of reps[i] * reps[j].
    pub fn entry(&self, i: usize, j: usize) -> Elem {
        self.entries[i * self.index + j]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.entries
    }

    pub fn nontrivial_count(&self) -> usize {
        self.nontrivial
    }

    /// Distinct carry values, ascending.
    pub fn distinct_values(&self) -> &[Elem] {
        &self.distinct
    }

    /// C(X) = |{(x, y) in X^2 : xy in X}| / |X|^2.
    pub fn score(&self) -> Rational {
        self.score
    }
}

/// Carry of x * y; both must be chosen representatives.
pub fn carry(system: &CosetSystem, reps: &RepSet, x: Elem, y: Elem) -> Result<Elem, CarriesError> {
    if !reps.is_rep(system, x) {
        return Err(CarriesError::NotARepresentative(x));
    }
    if !reps.is_rep(system, y) {
        return Err(CarriesError::NotARepresentative(y));
    }
    Ok(carry_unchecked(system, reps, x, y))
}

#[inline]
fn carry_unchecked(system: &CosetSystem, reps: &RepSet, x: Elem, y: Elem) -> Elem {
    let g = system.group();
    let z = g.mul(x, y);
    let x12 = reps.reps()[system.coset_of(z)];
    let h = g.mul(g.inv(x12), z);
    debug_assert!(system.in_subgroup(h));
    h
}

/// Full carry table with statistics; rows may be computed in parallel, the
/// result does not depend on the partitioning.
pub fn carry_table(system: &CosetSystem, reps: &RepSet) -> CarryTable {
    let k = system.index();
    let identity = system.group().identity();
    let entries: Vec<Elem> = (0..k)
        .into_par_iter()
        .flat_map_iter(|i| {
            let x = reps.reps()[i];
            (0..k).map(move |j| carry_unchecked(system, reps, x, reps.reps()[j]))
        })
        .collect();
    let nontrivial = entries.iter().filter(|&&h| h != identity).count();
    let mut distinct = entries.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let score = Rational::new((k * k - nontrivial) as i64, (k * k) as i64);
    CarryTable {
        index: k,
        entries,
        nontrivial,
        distinct,
        score,
    }
}

/// C(X) without materializing the table.
pub fn carry_score(system: &CosetSystem, reps: &RepSet) -> Rational {
    let k = system.index();
    let g = system.group();
    let good: usize = reps
        .reps()
        .iter()
        .map(|&x| {
            reps.reps()
                .iter()
                .filter(|&&y| reps.is_rep(system, g.mul(x, y)))
                .count()
        })
        .sum();
    Rational::new(good as i64, (k * k) as i64)
}

/// The digit base b when the system is b(Z/b^2) inside Z/b^2 with b >= 2.
pub fn digit_base(system: &CosetSystem) -> Option<usize> {
    let m = system.group().cyclic_modulus()?;
    let b = system.index();
    if b < 2 || b * b != m || system.subgroup_order() != b {
        return None;
    }
    system
        .subgroup()
        .iter()
        .enumerate()
        .all(|(t, &h)| h == t * b)
        .then_some(b)
}

/// The usual digits {0, 1, ..., b-1} for b(Z/b^2) in Z/b^2.
pub fn standard_reps(system: &CosetSystem) -> Result<RepSet, CarriesError> {
    let b = digit_base(system).ok_or(CarriesError::NotDigitSystem)?;
    Ok(RepSet::from_unchecked((0..b).collect()))
}

/// Balanced digits for b(Z/b^2) in Z/b^2: the window (-b/2, b/2], which is
/// {0, +-1, ..., +-(b-1)/2} for odd b and includes +b/2 for even b.
pub fn balanced_reps(system: &CosetSystem) -> Result<RepSet, CarriesError> {
    let b = digit_base(system).ok_or(CarriesError::NotDigitSystem)?;
    let m = b * b;
    let reps = (0..b)
        .map(|i| if i <= b / 2 { i } else { m + i - b })
        .collect();
    Ok(RepSet::from_unchecked(reps))
}

/// Representative of x in the signed window (-m/2, m/2].
pub fn signed_residue(modulus: usize, x: Elem) -> i64 {
    let m = modulus as i64;
    let x = x as i64;
    if 2 * x > m {
        x - m
    } else {
        x
    }
}

/// Carries induced by a list of distinct integers: the number of ordered
/// pairs (i, j) with X[i] + X[j] outside X. Sums never wrap, so this is the
/// bZ-inside-Z model when X holds one value per residue class mod b.
pub fn integer_carry_count(xs: &[i64]) -> Result<usize, CarriesError> {
    let mut sorted = xs.to_vec();
    sorted.sort_unstable();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(CarriesError::DuplicateEntry(w[0]));
    }
    let count = xs
        .iter()
        .map(|&a| {
            xs.iter()
                .filter(|&&b| sorted.binary_search(&(a + b)).is_err())
                .count()
        })
        .sum();
    Ok(count)
}

/// The sign-counting argument works for any distinct reals, so the count is
/// also defined for floats; membership is exact equality. The CLI sticks to
/// integers, where exactness is free.
pub fn real_carry_count(xs: &[f64]) -> Result<usize, CarriesError> {
    let mut sorted = xs.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite inputs"));
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(CarriesError::DuplicateEntry(w[0] as i64));
    }
    let count = xs
        .iter()
        .map(|&a| {
            xs.iter()
                .filter(|&&b| {
                    sorted
                        .binary_search_by(|probe| probe.partial_cmp(&(a + b)).unwrap())
                        .is_err()
                })
                .count()
        })
        .sum();
    Ok(count)
}

/// Lower bound on the carries forced by sign structure alone: with c
/// positive and b-1-c negative elements, adding the r-th largest positive
/// forces r carries, and symmetrically for negatives, so at least
/// c(c+1)/2 + (b-1-c)(b-c)/2 pairs must carry.
pub fn sign_count_lower_bound(positives: usize, b: usize) -> usize {
    debug_assert!(positives <= b.saturating_sub(1));
    let c = positives;
    c * (c + 1) / 2 + (b - 1 - c) * (b - c) / 2
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::rational::ratio;

    fn digit_system(b: usize) -> CosetSystem {
        let g = FiniteGroup::cyclic(b * b).unwrap();
        let h: Vec<Elem> = (0..b).map(|t| t * b).collect();
        CosetSystem::new(g, &h).unwrap()
    }

    #[test]
    fn named_rep_sets() {
        let sys = digit_system(10);
        assert_eq!(
            standard_reps(&sys).unwrap().reps(),
            &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]
        );

        let sys5 = digit_system(5);
        assert_eq!(balanced_reps(&sys5).unwrap().reps(), &[0, 1, 2, 23, 24]);

        let sys4 = digit_system(4);
        // window (-2, 2] = {-1, 0, 1, 2}
        assert_eq!(balanced_reps(&sys4).unwrap().reps(), &[0, 1, 2, 15]);

        let g = FiniteGroup::cyclic(12).unwrap();
        let not_square = CosetSystem::new(g, &[0, 4, 8]).unwrap();
        assert!(matches!(
            standard_reps(&not_square),
            Err(CarriesError::NotDigitSystem)
        ));
    }

    #[test]
    fn balanced_base5_carries() {
        let sys = digit_system(5);
        let reps = balanced_reps(&sys).unwrap();
        // 2 + 2 = 5 - 1: carry +5
        assert_eq!(carry(&sys, &reps, 2, 2).unwrap(), 5);
        // (-2) + (-2) = -5 + 1: carry -5 = 20 mod 25
        assert_eq!(carry(&sys, &reps, 23, 23).unwrap(), 20);
        // sums landing inside X carry the identity
        assert_eq!(carry(&sys, &reps, 1, 1).unwrap(), 0);
        assert!(matches!(
            carry(&sys, &reps, 3, 2),
            Err(CarriesError::NotARepresentative(3))
        ));
    }

    #[test]
    fn standard_base10_table() {
        let sys = digit_system(10);
        let reps = standard_reps(&sys).unwrap();
        let table = carry_table(&sys, &reps);
        assert_eq!(table.nontrivial_count(), 45);
        for i in 0..10 {
            for j in 0..10 {
                let expected = if i + j >= 10 { 10 } else { 0 };
                assert_eq!(table.entry(i, j), expected, "at ({i},{j})");
            }
        }
        assert_eq!(table.distinct_values(), &[0, 10]);
        assert_eq!(table.score(), ratio(55, 100));
    }

    #[test]
    fn balanced_base5_table() {
        let sys = digit_system(5);
        let reps = balanced_reps(&sys).unwrap();
        let table = carry_table(&sys, &reps);
        assert_eq!(table.nontrivial_count(), 6);
        assert_eq!(table.distinct_values(), &[0, 5, 20]);
        assert_eq!(table.score(), ratio(19, 25));
    }

    #[test]
    fn shifted_foolish_digits_always_carry() {
        // {3, 4, 5} as representatives of 3(Z/9) in Z/9: every sum carries
        let sys = digit_system(3);
        let reps = RepSet::new(&sys, vec![3, 4, 5]).unwrap();
        let table = carry_table(&sys, &reps);
        assert_eq!(table.nontrivial_count(), 9);
        assert_eq!(table.score(), ratio(0, 1));
    }

    #[test]
    fn score_shortcut_matches_table() {
        let sys = digit_system(5);
        for reps in [
            standard_reps(&sys).unwrap(),
            balanced_reps(&sys).unwrap(),
            RepSet::new(&sys, vec![0, 6, 12, 18, 24]).unwrap(),
        ] {
            assert_eq!(carry_score(&sys, &reps), carry_table(&sys, &reps).score());
        }
    }

    #[test]
    fn balanced_nine_score() {
        let g = FiniteGroup::cyclic(9).unwrap();
        let sys = CosetSystem::new(g, &[0, 3, 6]).unwrap();
        let reps = RepSet::new(&sys, vec![0, 1, 8]).unwrap();
        assert_eq!(carry_score(&sys, &reps), ratio(7, 9));
    }

    #[test]
    fn subgroup_complement_scores_one() {
        let g = FiniteGroup::cyclic(6).unwrap();
        let sys = CosetSystem::new(g, &[0, 2, 4]).unwrap();
        let reps = RepSet::new(&sys, vec![0, 3]).unwrap();
        assert_eq!(carry_score(&sys, &reps), ratio(1, 1));
    }

    #[test]
    fn integer_model_counts() {
        assert_eq!(integer_carry_count(&[0, 1, 2, -2, -1]).unwrap(), 6);
        assert_eq!(
            integer_carry_count(&[0, 1, 2, 3, 4, 5, 6, 7, 8, 9]).unwrap(),
            45
        );
        assert_eq!(integer_carry_count(&[5, 6, 7, 8, 9]).unwrap(), 25);
        assert!(matches!(
            integer_carry_count(&[0, 1, 1]),
            Err(CarriesError::DuplicateEntry(1))
        ));
    }

    #[test]
    fn sign_bound_values() {
        assert_eq!(sign_count_lower_bound(2, 5), 6);
        assert_eq!(sign_count_lower_bound(4, 5), 10);
        assert_eq!(sign_count_lower_bound(0, 2), 1);
    }

    #[test]
    fn real_counts_match_integer_counts_and_respect_the_bound() {
        let xs = [0i64, 1, 2, -2, -1];
        let fs: Vec<f64> = xs.iter().map(|&x| x as f64).collect();
        assert_eq!(
            real_carry_count(&fs).unwrap(),
            integer_carry_count(&xs).unwrap()
        );
        // genuinely non-integer representatives still obey the sign bound
        let reals = [0.0, 0.5, 1.25, -0.75, 2.5];
        let count = real_carry_count(&reals).unwrap();
        assert!(count >= 25 / 4);
        assert!(matches!(
            real_carry_count(&[0.0, 1.5, 1.5]),
            Err(CarriesError::DuplicateEntry(_))
        ));
    }

    #[test]
    fn sign_bound_matches_quadratic_form() {
        // 4 * bound = b^2 - 1 + (2c - (b-1))^2
        for b in 2..=12usize {
            for c in 0..b {
                let bound = sign_count_lower_bound(c, b) as i64;
                let b_i = b as i64;
                let c_i = c as i64;
                assert_eq!(4 * bound, b_i * b_i - 1 + (2 * c_i - (b_i - 1)).pow(2));
            }
        }
    }

    #[test]
    fn reconstruction_identity() {
        let sys = digit_system(5);
        let g = sys.group().clone();
        for reps in crate::group::all_rep_sets(&sys).take(200) {
            let table = carry_table(&sys, &reps);
            for i in 0..5 {
                for j in 0..5 {
                    let x = reps.reps()[i];
                    let y = reps.reps()[j];
                    let z = g.mul(x, y);
                    let x12 = reps.reps()[sys.coset_of(z)];
                    assert_eq!(g.mul(x12, table.entry(i, j)), z);
                }
            }
        }
    }

    #[test]
    fn signed_residues() {
        assert_eq!(signed_residue(25, 23), -2);
        assert_eq!(signed_residue(25, 12), 12);
        assert_eq!(signed_residue(25, 13), -12);
        assert_eq!(signed_residue(16, 8), 8);
        assert_eq!(signed_residue(16, 9), -7);
    }
}
