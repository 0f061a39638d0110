//! Branch-and-bound minimum-carry search over integer representative sets
//! {0, x1, ..., x_{b-1}} with one xi per nonzero residue class mod b and
//! |xi| <= B.
//!
//! Candidates are ordered by magnitude (positive before negative on equal
//! magnitude), so the first optimum found is the most balanced witness.
//! Pruning combines two admissible lower bounds: carries already decided
//! among chosen entries, and the sign-count bound minimized over the
//! positive counts still reachable.

use super::{SearchError, SearchResult};
use crate::carries::{integer_carry_count, sign_count_lower_bound};

struct Ctx {
    b: usize,
    bound: i64,
    /// candidates per class 1..b-1, magnitude-ordered
    classes: Vec<Vec<i64>>,
    /// chosen[0] = 0, then one entry per decided class
    chosen: Vec<i64>,
    best: usize,
    witness: Vec<i64>,
    optima: u64,
    nodes: u64,
}

impl Ctx {
    /// Carries already decided by the partial assignment: a pair is decided
    /// when its sum's class is assigned (compare against the chosen entry)
    /// or the sum falls outside the window entirely.
    fn decided_carries(&self) -> usize {
        let mut count = 0;
        for (i, &x) in self.chosen.iter().enumerate() {
            for &y in &self.chosen[..=i] {
                let weight = if x == y { 1 } else { 2 };
                let s = x + y;
                let class = s.rem_euclid(self.b as i64) as usize;
                let decided_carry = if class < self.chosen.len() {
                    s != self.chosen[class]
                } else {
                    s.abs() > self.bound
                };
                if decided_carry {
                    count += weight;
                }
            }
        }
        count
    }

    /// Admissible bound from sign structure: minimize the sign-count bound
    /// over every reachable final count of positive entries.
    fn sign_bound(&self) -> usize {
        let pos_now = self.chosen.iter().filter(|&&x| x > 0).count();
        let remaining = &self.classes[self.chosen.len() - 1..];
        let must_pos = remaining
            .iter()
            .filter(|cands| cands.iter().all(|&x| x > 0))
            .count();
        let may_pos = remaining
            .iter()
            .filter(|cands| cands.iter().any(|&x| x > 0))
            .count();
        let lo = pos_now + must_pos;
        let hi = pos_now + may_pos;
        (lo..=hi)
            .map(|c| sign_count_lower_bound(c, self.b))
            .min()
            .expect("nonempty positive-count range")
    }

    fn dfs(&mut self) {
        let depth = self.chosen.len() - 1;
        if depth == self.b - 1 {
            let count = self.decided_carries();
            debug_assert_eq!(count, integer_carry_count(&self.chosen).unwrap());
            if count < self.best {
                self.best = count;
                self.witness = self.chosen.clone();
                self.optima = 1;
            } else if count == self.best {
                self.optima += 1;
            }
            return;
        }
        let candidates = self.classes[depth].clone();
        for x in candidates {
            self.nodes += 1;
            self.chosen.push(x);
            let lower = self.decided_carries().max(self.sign_bound());
            if lower <= self.best {
                self.dfs();
            }
            self.chosen.pop();
        }
    }
}

/// Minimum of the integer carry count over all window-bounded representative
/// sets; the witness is reported as the full set in class order (leading 0).
pub fn min_carries_window(
    b: usize,
    bound: i64,
) -> Result<SearchResult<usize, Vec<i64>>, SearchError> {
    if b < 2 {
        return Err(SearchError::BaseTooSmall(b));
    }
    if bound < b as i64 {
        return Err(SearchError::WindowTooSmall { bound, base: b });
    }
    let classes: Vec<Vec<i64>> = (1..b)
        .map(|class| {
            let mut cands: Vec<i64> = (-bound..=bound)
                .filter(|&x| x.rem_euclid(b as i64) == class as i64)
                .collect();
            cands.sort_by_key(|&x| (x.abs(), x < 0));
            cands
        })
        .collect();
    let mut ctx = Ctx {
        b,
        bound,
        classes,
        chosen: vec![0],
        best: usize::MAX,
        witness: Vec::new(),
        optima: 0,
        nodes: 0,
    };
    ctx.dfs();
    Ok(SearchResult {
        objective: ctx.best,
        witness: ctx.witness,
        optima: ctx.optima,
        nodes: ctx.nodes,
        exhaustive: true,
    })
}
