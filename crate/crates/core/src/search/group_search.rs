//! Branch-and-bound over representative sets of a coset system: minimum
//! nontrivial-carry count and maximum carry score.
//!
//! Branching follows coset ids with candidate representatives ascending, so
//! the reported witness is the lexicographically smallest optimum. The
//! admissible bound counts carries already decided among the chosen
//! representatives (a pair is decided once the coset of its product has its
//! representative chosen). Top-level branches run in parallel; the
//! reduction is a commutative minimum, so results do not depend on the
//! worker count.

use super::{SearchError, SearchResult};
use crate::group::{CosetSystem, RepSet, RepSetIter};
use crate::rational::Rational;
use rayon::prelude::*;

const NODE_GUARD: f64 = 1e9;

struct Branch {
    best: usize,
    witness: Vec<usize>,
    optima: u64,
    nodes: u64,
}

fn decided_carries(system: &CosetSystem, chosen: &[usize]) -> usize {
    let g = system.group();
    let t = chosen.len();
    let mut count = 0;
    for i in 0..t {
        for j in 0..t {
            let z = g.mul(chosen[i], chosen[j]);
            let c = system.coset_of(z);
            if c < t && chosen[c] != z {
                count += 1;
            }
        }
    }
    count
}

fn dfs(system: &CosetSystem, chosen: &mut Vec<usize>, state: &mut Branch) {
    let k = system.index();
    if chosen.len() == k {
        let count = decided_carries(system, chosen);
        if count < state.best {
            state.best = count;
            state.witness = chosen.clone();
            state.optima = 1;
        } else if count == state.best {
            state.optima += 1;
        }
        return;
    }
    let coset = chosen.len();
    for &candidate in system.coset_members(coset) {
        state.nodes += 1;
        chosen.push(candidate);
        if decided_carries(system, chosen) <= state.best {
            dfs(system, chosen, state);
        }
        chosen.pop();
    }
}

/// Minimum number of nontrivial carries over every representative set.
pub fn min_carries_group(system: &CosetSystem) -> Result<SearchResult<usize, RepSet>, SearchError> {
    let space = RepSetIter::space_size(system);
    if space > NODE_GUARD {
        return Err(SearchError::StateSpaceTooLarge(space));
    }
    let merged = system
        .coset_members(0)
        .par_iter()
        .map(|&first| {
            let mut state = Branch {
                best: usize::MAX,
                witness: Vec::new(),
                optima: 0,
                nodes: 1,
            };
            let mut chosen = vec![first];
            if decided_carries(system, &chosen) <= state.best {
                dfs(system, &mut chosen, &mut state);
            }
            state
        })
        .reduce(
            || Branch {
                best: usize::MAX,
                witness: Vec::new(),
                optima: 0,
                nodes: 0,
            },
            |a, b| match a.best.cmp(&b.best) {
                std::cmp::Ordering::Less => Branch {
                    nodes: a.nodes + b.nodes,
                    ..a
                },
                std::cmp::Ordering::Greater => Branch {
                    nodes: a.nodes + b.nodes,
                    ..b
                },
                std::cmp::Ordering::Equal => {
                    let witness = if b.witness.is_empty()
                        || (!a.witness.is_empty() && a.witness <= b.witness)
                    {
                        a.witness.clone()
                    } else {
                        b.witness.clone()
                    };
                    Branch {
                        best: a.best,
                        witness,
                        optima: a.optima + b.optima,
                        nodes: a.nodes + b.nodes,
                    }
                }
            },
        );
    Ok(SearchResult {
        objective: merged.best,
        witness: RepSet::from_unchecked(merged.witness),
        optima: merged.optima,
        nodes: merged.nodes,
        exhaustive: true,
    })
}

/// Maximum carry score over every representative set: the same search, with
/// the count converted to the exact score (k^2 - count) / k^2.
pub fn max_cscore_group(
    system: &CosetSystem,
) -> Result<SearchResult<Rational, RepSet>, SearchError> {
    let r = min_carries_group(system)?;
    let k = system.index() as i64;
    Ok(SearchResult {
        objective: Rational::new(k * k - r.objective as i64, k * k),
        witness: r.witness,
        optima: r.optima,
        nodes: r.nodes,
        exhaustive: r.exhaustive,
    })
}
