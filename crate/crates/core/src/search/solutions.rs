//! Maximum solution count of a1 + a2 = a3 over triples of representative
//! sets for p(Z/p^2) in Z/p^2.
//!
//! Exhaustive for p = 3 (27^3 triples); for larger p the balanced triple is
//! evaluated as a witness and random triples are sampled, never exceeding
//! the (3p^2 + 1)/4 ceiling.

use super::{SearchError, SearchResult};
use crate::arith::is_prime;
use crate::bitset::ElemSet;
use crate::carries::balanced_reps;
use crate::group::{all_rep_sets, CosetSystem, FiniteGroup, RepSet};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

/// Search outcome plus the balanced-triple value and sampling volume.
#[derive(Clone, Debug)]
pub struct SolutionSearch {
    pub result: SearchResult<u64, (RepSet, RepSet, RepSet)>,
    /// solution count of the balanced triple, (3p^2 + 1)/4 at every odd p
    pub balanced_value: u64,
    pub samples: u64,
}

fn digit_system(p: usize) -> CosetSystem {
    let g = FiniteGroup::cyclic(p * p).expect("positive modulus");
    let h: Vec<usize> = (0..p).map(|t| t * p).collect();
    CosetSystem::new(g, &h).expect("multiples of p form a normal subgroup")
}

/// Ordered pairs (a1, a2) in A1 x A2 with a1 + a2 landing in A3.
fn count_solutions(m: usize, a1: &[usize], a2: &[usize], a3: &ElemSet) -> u64 {
    let mut count = 0;
    for &x in a1 {
        for &y in a2 {
            let s = x + y;
            let s = if s >= m { s - m } else { s };
            if a3.contains(s) {
                count += 1;
            }
        }
    }
    count
}

/// Maximum of the solution count over representative-set triples.
/// Exhaustive when p = 3; sampled (plus the balanced witness) otherwise.
pub fn max_solution_count(
    p: usize,
    samples: u64,
    seed: u64,
) -> Result<SolutionSearch, SearchError> {
    if p < 3 || !is_prime(p as u64) {
        return Err(SearchError::NotOddPrime(p));
    }
    let system = digit_system(p);
    let m = p * p;
    let balanced = balanced_reps(&system)?;
    let balanced_mask = ElemSet::from_elems(m, balanced.reps().iter().copied());
    let balanced_value = count_solutions(m, balanced.reps(), balanced.reps(), &balanced_mask);

    if p == 3 {
        let sets: Vec<RepSet> = all_rep_sets(&system).collect();
        let masks: Vec<ElemSet> = sets
            .iter()
            .map(|r| ElemSet::from_elems(m, r.reps().iter().copied()))
            .collect();
        let (best, wi, optima, nodes) = sets
            .par_iter()
            .enumerate()
            .map(|(i1, a1)| {
                let mut best = 0u64;
                let mut witness = (0usize, 0usize, 0usize);
                let mut optima = 0u64;
                let mut nodes = 0u64;
                for (i2, a2) in sets.iter().enumerate() {
                    for (i3, mask3) in masks.iter().enumerate() {
                        nodes += 1;
                        let c = count_solutions(m, a1.reps(), a2.reps(), mask3);
                        if c > best {
                            best = c;
                            witness = (i1, i2, i3);
                            optima = 1;
                        } else if c == best {
                            optima += 1;
                        }
                    }
                }
                (best, witness, optima, nodes)
            })
            .reduce(
                || (0, (usize::MAX, 0, 0), 0, 0),
                |a, b| {
                    if a.0 > b.0 || (a.0 == b.0 && a.1 <= b.1) {
                        (a.0, a.1, a.2 + if a.0 == b.0 { b.2 } else { 0 }, a.3 + b.3)
                    } else {
                        (b.0, b.1, b.2 + if a.0 == b.0 { a.2 } else { 0 }, a.3 + b.3)
                    }
                },
            );
        let witness = (sets[wi.0].clone(), sets[wi.1].clone(), sets[wi.2].clone());
        return Ok(SolutionSearch {
            result: SearchResult {
                objective: best,
                witness,
                optima,
                nodes,
                exhaustive: true,
            },
            balanced_value,
            samples: 0,
        });
    }

    let mut rng = StdRng::seed_from_u64(seed);
    let mut best = balanced_value;
    let mut witness = (balanced.clone(), balanced.clone(), balanced.clone());
    let mut optima = 1u64;
    let random_rep = |rng: &mut StdRng, system: &CosetSystem| -> RepSet {
        let reps = (0..system.index())
            .map(|c| {
                let members = system.coset_members(c);
                members[rng.random_range(0..members.len())]
            })
            .collect();
        RepSet::from_unchecked(reps)
    };
    for _ in 0..samples {
        let a1 = random_rep(&mut rng, &system);
        let a2 = random_rep(&mut rng, &system);
        let a3 = random_rep(&mut rng, &system);
        let mask = ElemSet::from_elems(m, a3.reps().iter().copied());
        let c = count_solutions(m, a1.reps(), a2.reps(), &mask);
        if c > best {
            best = c;
            witness = (a1, a2, a3);
            optima = 1;
        } else if c == best {
            optima += 1;
        }
    }
    Ok(SolutionSearch {
        result: SearchResult {
            objective: best,
            witness,
            optima,
            nodes: samples + 1,
            exhaustive: false,
        },
        balanced_value,
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_base_three() {
        let s = max_solution_count(3, 0, 0).unwrap();
        assert_eq!(s.result.objective, 7);
        assert_eq!(s.balanced_value, 7);
        assert!(s.result.exhaustive);
        assert_eq!(s.result.nodes, 27 * 27 * 27);
    }

    #[test]
    fn sampled_base_five() {
        let s = max_solution_count(5, 2000, 7).unwrap();
        assert_eq!(s.balanced_value, 19);
        assert_eq!(s.result.objective, 19);
        assert!(!s.result.exhaustive);
    }

    #[test]
    fn rejects_non_primes() {
        assert!(matches!(
            max_solution_count(4, 0, 0),
            Err(SearchError::NotOddPrime(4))
        ));
        assert!(matches!(
            max_solution_count(2, 0, 0),
            Err(SearchError::NotOddPrime(2))
        ));
    }
}
