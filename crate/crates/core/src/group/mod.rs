//! Finite group arithmetic with validated normal-subgroup and coset
//! machinery.
//!
//! Elements are dense integers `0..n-1` so that multiplication, coset lookup,
//! and membership all stay array-indexed in the exhaustive loops downstream.
//! Product groups use row-major pair encoding: `(a, b)` is `a * |G2| + b`.

mod coset;

pub use coset::{all_rep_sets, CosetSystem, RepSet, RepSetIter};

use thiserror::Error;

pub type Elem = usize;

/// Explicit Cayley tables larger than this are validated with Light's
/// associativity test instead of the full cubic scan.
const FULL_ASSOC_CHECK_LIMIT: usize = 256;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("cayley table is empty")]
    EmptyTable,
    #[error("cayley table row {row} has {len} entries, expected {expected}")]
    RaggedTable {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("table entry {value} at row {row}, column {col} is out of range 0..{order}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("row {0} of the cayley table is not a permutation")]
    RowNotPermutation(usize),
    #[error("column {0} of the cayley table is not a permutation")]
    ColumnNotPermutation(usize),
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(Elem),
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: Elem, b: Elem, c: Elem },
    #[error("element {0} is out of range for this group")]
    ElementOutOfRange(Elem),
    #[error("subgroup must contain the identity")]
    SubgroupMissingIdentity,
    #[error("subgroup is empty")]
    EmptySubgroup,
    #[error("subgroup is not closed: {a}*{b} falls outside it")]
    SubgroupNotClosed { a: Elem, b: Elem },
    #[error("subgroup is missing the inverse of {0}")]
    SubgroupMissingInverse(Elem),
    #[error("subgroup is not normal: conjugating {h} by {g} leaves it")]
    SubgroupNotNormal { g: Elem, h: Elem },
    #[error("expected {expected} coset representatives, got {got}")]
    WrongRepCount { expected: usize, got: usize },
    #[error("element {elem} does not represent coset {coset}")]
    WrongCoset { elem: Elem, coset: usize },
}

#[derive(Clone, Debug)]
enum Kind {
    Cyclic {
        modulus: usize,
    },
    Product {
        left: Box<FiniteGroup>,
        right: Box<FiniteGroup>,
    },
    Table {
        table: Vec<Elem>,
    },
}

/// A finite group on elements `0..order`.
///
/// Cyclic groups are addition mod m with identity 0; products act
/// componentwise on row-major pairs; table groups carry an explicit Cayley
/// table that is fully validated at construction.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    identity: Elem,
    inverses: Vec<Elem>,
    kind: Kind,
    label: String,
}

impl FiniteGroup {
    /// Z/mZ under addition.
    pub fn cyclic(modulus: usize) -> Result<Self, GroupError> {
        if modulus == 0 {
            return Err(GroupError::ZeroModulus);
        }
        let inverses = (0..modulus).map(|a| (modulus - a) % modulus).collect();
        Ok(FiniteGroup {
            order: modulus,
            identity: 0,
            inverses,
            kind: Kind::Cyclic { modulus },
            label: format!("Z/{modulus}"),
        })
    }

    /// Direct product with componentwise operation; `(a, b)` encodes as
    /// `a * |right| + b`.
    pub fn product(left: FiniteGroup, right: FiniteGroup) -> Self {
        let order = left.order * right.order;
        let rn = right.order;
        let inverses = (0..order)
            .map(|x| left.inv(x / rn) * rn + right.inv(x % rn))
            .collect();
        let identity = left.identity * rn + right.identity;
        let label = format!("{}x{}", left.label, right.label);
        FiniteGroup {
            order,
            identity,
            inverses,
            kind: Kind::Product {
                left: Box::new(left),
                right: Box::new(right),
            },
            label,
        }
    }

    /// Group from an explicit Cayley table, validated in full: square shape,
    /// Latin rows and columns, two-sided identity and inverses, and
    /// associativity (cubic scan up to order 256, Light's test above).
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::EmptyTable);
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::RaggedTable {
                    row: i,
                    len: row.len(),
                    expected: n,
                });
            }
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::EntryOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                        order: n,
                    });
                }
            }
        }
        let table: Vec<Elem> = rows.iter().flatten().copied().collect();

        for i in 0..n {
            let mut seen = vec![false; n];
            for j in 0..n {
                seen[table[i * n + j]] = true;
            }
            if seen.iter().any(|&s| !s) {
                return Err(GroupError::RowNotPermutation(i));
            }
            seen.fill(false);
            for j in 0..n {
                seen[table[j * n + i]] = true;
            }
            if seen.iter().any(|&s| !s) {
                return Err(GroupError::ColumnNotPermutation(i));
            }
        }

        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e * n + a] == a && table[a * n + e] == a))
            .ok_or(GroupError::NoIdentity)?;

        let mut inverses = vec![0; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&x| table[a * n + x] == identity && table[x * n + a] == identity)
                .ok_or(GroupError::NoInverse(a))?;
            inverses[a] = inv;
        }

        verify_associativity(&table, n, identity)?;

        Ok(FiniteGroup {
            order: n,
            identity,
            inverses,
            kind: Kind::Table { table },
            label: format!("table({n})"),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    /// Modulus when this group is cyclic.
    pub fn cyclic_modulus(&self) -> Option<usize> {
        match self.kind {
            Kind::Cyclic { modulus } => Some(modulus),
            _ => None,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        debug_assert!(a < self.order && b < self.order);
        match &self.kind {
            Kind::Cyclic { modulus } => {
                let s = a + b;
                if s >= *modulus {
                    s - *modulus
                } else {
                    s
                }
            }
            Kind::Product { left, right } => {
                let rn = right.order;
                left.mul(a / rn, b / rn) * rn + right.mul(a % rn, b % rn)
            }
            Kind::Table { table } => table[a * self.order + b],
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        debug_assert!(a < self.order);
        self.inverses[a]
    }

    /// `g * h * g^-1`.
    #[inline]
    pub fn conjugate(&self, g: Elem, h: Elem) -> Elem {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn check_element(&self, a: Elem) -> Result<(), GroupError> {
        if a < self.order {
            Ok(())
        } else {
            Err(GroupError::ElementOutOfRange(a))
        }
    }

    /// Whether a sorted, distinct element list forms a subgroup.
    pub fn is_subgroup(&self, elems: &[Elem]) -> bool {
        if elems.is_empty() || !elems.contains(&self.identity) {
            return false;
        }
        if elems.iter().any(|&e| e >= self.order) {
            return false;
        }
        elems.iter().all(|&a| {
            elems.binary_search(&self.inv(a)).is_ok()
                && elems
                    .iter()
                    .all(|&b| elems.binary_search(&self.mul(a, b)).is_ok())
        })
    }
}

fn verify_associativity(table: &[Elem], n: usize, identity: Elem) -> Result<(), GroupError> {
    if n <= FULL_ASSOC_CHECK_LIMIT {
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        return Ok(());
    }

    // Light's test: associativity over a generating set implies it everywhere.
    let mut gens: Vec<Elem> = Vec::new();
    let mut reachable = vec![false; n];
    reachable[identity] = true;
    let mut count = 1;
    while count < n {
        let g = (0..n).find(|&x| !reachable[x]).expect("unreached element");
        gens.push(g);
        let mut stack: Vec<Elem> = (0..n).filter(|&x| reachable[x]).collect();
        while let Some(x) = stack.pop() {
            for &t in &gens {
                let y = table[x * n + t];
                if !reachable[y] {
                    reachable[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
    }
    for &g in &gens {
        for a in 0..n {
            let ag = table[a * n + g];
            for b in 0..n {
                if table[ag * n + b] != table[a * n + table[g * n + b]] {
                    return Err(GroupError::NotAssociative { a, b: g, c: b });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// S3 as permutations of {0,1,2} in lexicographic order, composed left
    /// after right.
    pub(crate) fn s3_table() -> Vec<Vec<usize>> {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let compose = |p: &[usize; 3], q: &[usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
        (0..6)
            .map(|i| {
                (0..6)
                    .map(|j| {
                        let r = compose(&perms[i], &perms[j]);
                        perms.iter().position(|p| *p == r).unwrap()
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn cyclic_basics() {
        let g = FiniteGroup::cyclic(9).unwrap();
        assert_eq!(g.inv(4), 5);
        assert_eq!(g.identity(), 0);
        let g1 = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g1.order(), 1);
        let g25 = FiniteGroup::cyclic(25).unwrap();
        assert_eq!(g25.mul(13, 14), 2);
        assert!(FiniteGroup::cyclic(0).is_err());
    }

    #[test]
    fn product_basics() {
        let g = FiniteGroup::product(
            FiniteGroup::cyclic(3).unwrap(),
            FiniteGroup::cyclic(3).unwrap(),
        );
        // (1,2) + (2,2) = (0,1)
        assert_eq!(g.mul(3 + 2, 2 * 3 + 2), 1);
        assert_eq!(g.label(), "Z/3xZ/3");

        let v4 = FiniteGroup::product(
            FiniteGroup::cyclic(2).unwrap(),
            FiniteGroup::cyclic(2).unwrap(),
        );
        for x in v4.elements() {
            assert_eq!(v4.inv(x), x);
        }

        let big = FiniteGroup::product(
            FiniteGroup::cyclic(17).unwrap(),
            FiniteGroup::cyclic(17).unwrap(),
        );
        assert_eq!(big.order(), 289);
    }

    #[test]
    fn table_group_s3() {
        let g = FiniteGroup::from_table(&s3_table()).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        // nonabelian witness
        assert_ne!(g.mul(2, 3), g.mul(3, 2));
        // exhaustive axiom check
        for a in g.elements() {
            assert_eq!(g.mul(a, g.inv(a)), g.identity());
            for b in g.elements() {
                for c in g.elements() {
                    assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn table_group_z4() {
        let rows: Vec<Vec<usize>> = (0..4)
            .map(|i| (0..4).map(|j| (i + j) % 4).collect())
            .collect();
        let g = FiniteGroup::from_table(&rows).unwrap();
        assert_eq!(g.mul(3, 2), 1);
    }

    /// Cyclic table of order n with one 2x2 Latin subsquare swapped, leaving
    /// rows, columns, identity, and inverses intact but breaking
    /// associativity. Needs even n and cells away from row/column 0.
    fn intercalate_corrupted(n: usize) -> Vec<Vec<usize>> {
        assert!(n.is_multiple_of(2) && n >= 6);
        let mut rows: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        let (r1, c1) = (1, 1);
        let c2 = c1 + n / 2;
        let r2 = r1 + n / 2;
        let v = rows[r1][c1];
        let w = rows[r1][c2];
        rows[r1][c1] = w;
        rows[r1][c2] = v;
        rows[r2][c1] = v;
        rows[r2][c2] = w;
        rows
    }

    #[test]
    fn non_associative_table_rejected() {
        let rows = intercalate_corrupted(6);
        match FiniteGroup::from_table(&rows) {
            Err(GroupError::NotAssociative { .. }) => {}
            other => panic!("expected non-associative rejection, got {other:?}"),
        }
    }

    #[test]
    fn bad_tables_rejected() {
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 1], vec![1]]),
            Err(GroupError::RaggedTable { .. })
        ));
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 1], vec![1, 5]]),
            Err(GroupError::EntryOutOfRange { .. })
        ));
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 0], vec![1, 1]]),
            Err(GroupError::RowNotPermutation(_))
        ));
    }

    #[test]
    fn lights_test_path() {
        // order 300 tables exercise the generating-set check
        let n = 300;
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|i| (0..n).map(|j| (i + j) % n).collect())
            .collect();
        assert!(FiniteGroup::from_table(&rows).is_ok());

        let bad = intercalate_corrupted(n);
        match FiniteGroup::from_table(&bad) {
            Err(GroupError::NotAssociative { .. }) => {}
            other => panic!("expected non-associative rejection, got {other:?}"),
        }
    }

    #[test]
    fn subgroup_predicate() {
        let g = FiniteGroup::cyclic(6).unwrap();
        assert!(g.is_subgroup(&[0, 2, 4]));
        assert!(g.is_subgroup(&[0, 3]));
        assert!(!g.is_subgroup(&[0, 2]));
        assert!(!g.is_subgroup(&[1, 3, 5]));
    }
}
