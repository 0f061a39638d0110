//! Pollard's truncated-representation inequality and its consequences.
//!
//! For subsets A1..Ak of Z/m with A1'..Ak' intervals of matching sizes,
//! S(A1..Ak, r) = sum_x min(r, n(x, A1..Ak)) is at least S(A1'..Ak', r),
//! provided at least k-1 of the Ai have all pairwise differences coprime
//! to m. With r = 1, k = 2, and m prime this is Cauchy-Davenport:
//! |A + B| >= min(p, |A| + |B| - 1).

use super::sets::{rep_counts, ModSet};
use super::AdditiveError;
use crate::arith::gcd;

/// Whether all pairwise differences within the set are coprime to the
/// modulus (vacuously true for singletons).
pub fn coprime_differences(a: &ModSet) -> bool {
    let m = a.modulus() as u64;
    let elems = a.elems();
    elems
        .iter()
        .enumerate()
        .all(|(i, &x)| elems[..i].iter().all(|&y| gcd((x - y) as u64, m) == 1))
}

/// The interval {-floor((s-1)/2), ..., ceil((s-1)/2)} mod m: s consecutive
/// residues centered at the origin.
pub fn centered_interval(modulus: usize, size: usize) -> Result<ModSet, AdditiveError> {
    if size > modulus {
        return Err(AdditiveError::OutOfRange(size, modulus));
    }
    let lo = -(((size as i64) - 1) / 2);
    let ints: Vec<i64> = (0..size as i64).map(|t| lo + t).collect();
    ModSet::reduced(modulus, &ints)
}

/// S(A1..Ak, r) = sum over x of min(r, n(x, A1..Ak)).
pub fn pollard_s(sets: &[&ModSet], r: u64) -> Result<u64, AdditiveError> {
    let counts = rep_counts(sets)?;
    Ok(counts.iter().map(|&c| c.min(r)).sum())
}

fn check_hypothesis(sets: &[&ModSet]) -> Result<usize, AdditiveError> {
    let first = *sets
        .first()
        .ok_or(AdditiveError::TooFewSets { need: 2, got: 0 })?;
    let m = first.modulus();
    let good = sets.iter().filter(|s| coprime_differences(s)).count();
    if good + 1 < sets.len() {
        return Err(AdditiveError::PollardHypothesis {
            got: good,
            need: sets.len() - 1,
            total: sets.len(),
            modulus: m,
        });
    }
    Ok(m)
}

#[derive(Clone, Debug)]
pub struct PollardReport {
    pub r: u64,
    pub s: u64,
    pub s_intervals: u64,
    pub intervals: Vec<ModSet>,
    pub holds: bool,
}

/// Verifies S(A1..Ak, r) >= S(A1'..Ak', r) against origin-centered intervals
/// of matching sizes. Errors if fewer than k-1 sets satisfy the
/// coprime-differences hypothesis.
pub fn pollard_check(sets: &[&ModSet], r: u64) -> Result<PollardReport, AdditiveError> {
    let m = check_hypothesis(sets)?;
    let s = pollard_s(sets, r)?;
    let intervals: Vec<ModSet> = sets
        .iter()
        .map(|a| centered_interval(m, a.len()))
        .collect::<Result<_, _>>()?;
    let interval_refs: Vec<&ModSet> = intervals.iter().collect();
    let s_intervals = pollard_s(&interval_refs, r)?;
    Ok(PollardReport {
        r,
        s,
        s_intervals,
        intervals,
        holds: s >= s_intervals,
    })
}

#[derive(Clone, Debug)]
pub struct MaxRepReport {
    pub max: u64,
    pub max_intervals: u64,
    pub holds: bool,
}

/// Verifies max_x n(x, A1..Ak) <= max_x n(x, A1'..Ak') against centered
/// intervals; same hypothesis as the truncated inequality.
pub fn max_rep_check(sets: &[&ModSet]) -> Result<MaxRepReport, AdditiveError> {
    let m = check_hypothesis(sets)?;
    let max = *rep_counts(sets)?.iter().max().unwrap();
    let intervals: Vec<ModSet> = sets
        .iter()
        .map(|a| centered_interval(m, a.len()))
        .collect::<Result<_, _>>()?;
    let interval_refs: Vec<&ModSet> = intervals.iter().collect();
    let max_intervals = *rep_counts(&interval_refs)?.iter().max().unwrap();
    Ok(MaxRepReport {
        max,
        max_intervals,
        holds: max <= max_intervals,
    })
}

/// Number of solutions to a1 + a2 = a3 with ai in Ai, counted as
/// n(0, A1, A2, -A3).
pub fn solution_count(a1: &ModSet, a2: &ModSet, a3: &ModSet) -> Result<u64, AdditiveError> {
    let neg = a3.neg();
    super::sets::rep_count(0, &[a1, a2, &neg])
}

#[derive(Clone, Debug)]
pub struct CdReport {
    pub sumset_size: usize,
    pub bound: usize,
    pub holds: bool,
}

/// Cauchy-Davenport over a prime modulus: |A + B| >= min(p, |A| + |B| - 1).
pub fn cauchy_davenport_check(a: &ModSet, b: &ModSet) -> Result<CdReport, AdditiveError> {
    let p = a.modulus();
    if !crate::arith::is_prime(p as u64) {
        return Err(AdditiveError::NotPrime(p));
    }
    if a.is_empty() || b.is_empty() {
        return Err(AdditiveError::EmptySet);
    }
    let sumset_size = a.sumset(b)?.len();
    let bound = p.min(a.len() + b.len() - 1);
    Ok(CdReport {
        sumset_size,
        bound,
        holds: sumset_size >= bound,
    })
}
