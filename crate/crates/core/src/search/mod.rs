//! Certified exhaustive and branch-and-bound searches over representative
//! sets: minimum carry counts, maximum carry scores, solution-count maxima,
//! two-carry enumeration, and the two-dimensional grid exploration.

mod grid;
mod group_search;
mod solutions;
mod two_carry;
mod window;

pub use grid::{grid_cscore, GridReport};
pub use group_search::{max_cscore_group, min_carries_group};
pub use solutions::{max_solution_count, SolutionSearch};
pub use two_carry::{enumerate_two_carry, TwoCarryEntry};
pub use window::min_carries_window;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("base must be at least 2, got {0}")]
    BaseTooSmall(usize),
    #[error("window bound {bound} must be at least the base {base}")]
    WindowTooSmall { bound: i64, base: usize },
    #[error("state space of about {0:.2e} nodes exceeds the 1e9 guard")]
    StateSpaceTooLarge(f64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(usize),
    #[error("two-carry enumeration is exhaustive only up to base 7, got {0}")]
    BaseTooLargeForEnumeration(usize),
    #[error("grid exploration supports 2 <= b <= 5, got {0}")]
    GridBaseOutOfRange(usize),
    #[error("grid window {window} exceeds the 2b cap for base {base}")]
    GridWindowTooLarge { window: i64, base: usize },
    #[error(transparent)]
    Additive(#[from] crate::additive::AdditiveError),
    #[error(transparent)]
    Carries(#[from] crate::carries::CarriesError),
}

/// Outcome of a search: the optimum, one witness, how many configurations
/// attain it, and how much of the tree was visited.
///
/// The witness is the first optimum in the canonical traversal order, which
/// makes it the lexicographic minimum under that order; it is bit-identical
/// across worker counts.
#[derive(Clone, Debug)]
pub struct SearchResult<O, W> {
    pub objective: O,
    pub witness: W,
    pub optima: u64,
    pub nodes: u64,
    pub exhaustive: bool,
}
