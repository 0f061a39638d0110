//! Validated normal-subgroup coset systems and representative sets.

use super::{Elem, FiniteGroup, GroupError, Kind};

/// A validated normal subgroup H of finite index in a group G, with coset
/// lookup.
///
/// Coset ids are canonical: the coset of the identity is 0 and the remaining
/// cosets are ordered by their smallest member, so downstream output is
/// deterministic across runs and worker counts.
#[derive(Clone, Debug)]
pub struct CosetSystem {
    group: FiniteGroup,
    subgroup: Vec<Elem>,
    in_subgroup: Vec<bool>,
    coset_of: Vec<usize>,
    cosets: Vec<Vec<Elem>>,
}

impl CosetSystem {
    /// Validates that `subgroup_elems` is a normal subgroup of `group` and
    /// assigns canonical coset ids.
    pub fn new(group: FiniteGroup, subgroup_elems: &[Elem]) -> Result<Self, GroupError> {
        let n = group.order();
        let mut subgroup: Vec<Elem> = subgroup_elems.to_vec();
        subgroup.sort_unstable();
        subgroup.dedup();
        if subgroup.is_empty() {
            return Err(GroupError::EmptySubgroup);
        }
        for &h in &subgroup {
            group.check_element(h)?;
        }
        let mut in_subgroup = vec![false; n];
        for &h in &subgroup {
            in_subgroup[h] = true;
        }
        if !in_subgroup[group.identity()] {
            return Err(GroupError::SubgroupMissingIdentity);
        }
        for &a in &subgroup {
            if !in_subgroup[group.inv(a)] {
                return Err(GroupError::SubgroupMissingInverse(a));
            }
            for &b in &subgroup {
                if !in_subgroup[group.mul(a, b)] {
                    return Err(GroupError::SubgroupNotClosed { a, b });
                }
            }
        }
        for g in group.elements() {
            for &h in &subgroup {
                if !in_subgroup[group.conjugate(g, h)] {
                    return Err(GroupError::SubgroupNotNormal { g, h });
                }
            }
        }

        // Left cosets gH, keyed by smallest member.
        let mut canonical = vec![usize::MAX; n];
        for g in group.elements() {
            canonical[g] = subgroup.iter().map(|&h| group.mul(g, h)).min().unwrap();
        }
        let identity_key = canonical[group.identity()];
        let mut keys: Vec<usize> = canonical.clone();
        keys.sort_unstable();
        keys.dedup();
        let mut ordered: Vec<usize> = vec![identity_key];
        ordered.extend(keys.into_iter().filter(|&k| k != identity_key));

        let mut coset_of = vec![usize::MAX; n];
        let mut cosets = vec![Vec::new(); ordered.len()];
        for g in group.elements() {
            let id = ordered.iter().position(|&k| k == canonical[g]).unwrap();
            coset_of[g] = id;
            cosets[id].push(g);
        }

        Ok(CosetSystem {
            group,
            subgroup,
            in_subgroup,
            coset_of,
            cosets,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn subgroup(&self) -> &[Elem] {
        &self.subgroup
    }

    pub fn subgroup_order(&self) -> usize {
        self.subgroup.len()
    }

    /// Index k = |G| / |H|.
    pub fn index(&self) -> usize {
        self.cosets.len()
    }

    #[inline]
    pub fn coset_of(&self, x: Elem) -> usize {
        self.coset_of[x]
    }

    #[inline]
    pub fn in_subgroup(&self, x: Elem) -> bool {
        self.in_subgroup[x]
    }

    /// Members of a coset, ascending.
    pub fn coset_members(&self, id: usize) -> &[Elem] {
        &self.cosets[id]
    }

    /// The quotient group G/H on coset ids. Well defined because H is normal.
    pub fn quotient(&self) -> FiniteGroup {
        let k = self.index();
        let mut table = vec![0; k * k];
        for i in 0..k {
            let a = self.cosets[i][0];
            for j in 0..k {
                let b = self.cosets[j][0];
                table[i * k + j] = self.coset_of(self.group.mul(a, b));
            }
        }
        let inverses = (0..k)
            .map(|i| self.coset_of(self.group.inv(self.cosets[i][0])))
            .collect();
        FiniteGroup {
            order: k,
            identity: 0,
            inverses,
            kind: Kind::Table { table },
            label: format!("{}/H", self.group.label()),
        }
    }
}

/// One representative per coset; position i holds the representative of
/// coset i.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RepSet {
    reps: Vec<Elem>,
}

impl RepSet {
    pub fn new(system: &CosetSystem, reps: Vec<Elem>) -> Result<Self, GroupError> {
        if reps.len() != system.index() {
            return Err(GroupError::WrongRepCount {
                expected: system.index(),
                got: reps.len(),
            });
        }
        for (coset, &r) in reps.iter().enumerate() {
            system.group().check_element(r)?;
            if system.coset_of(r) != coset {
                return Err(GroupError::WrongCoset { elem: r, coset });
            }
        }
        Ok(RepSet { reps })
    }

    /// Skips validation; callers must hold one representative per coset in
    /// coset-id order.
    pub fn from_unchecked(reps: Vec<Elem>) -> Self {
        RepSet { reps }
    }

    pub fn reps(&self) -> &[Elem] {
        &self.reps
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    /// Whether x is one of the chosen representatives.
    pub fn is_rep(&self, system: &CosetSystem, x: Elem) -> bool {
        self.reps[system.coset_of(x)] == x
    }

    /// Representatives as a sorted element list.
    pub fn sorted(&self) -> Vec<Elem> {
        let mut v = self.reps.clone();
        v.sort_unstable();
        v
    }
}

/// Iterates every representative set of a system in lexicographic order
/// (cosets by id, members ascending).
pub struct RepSetIter<'a> {
    system: &'a CosetSystem,
    odometer: Vec<usize>,
    done: bool,
}

pub fn all_rep_sets(system: &CosetSystem) -> RepSetIter<'_> {
    RepSetIter {
        system,
        odometer: vec![0; system.index()],
        done: false,
    }
}

impl<'a> RepSetIter<'a> {
    /// Number of representative sets, as a float to allow overflow guards.
    pub fn space_size(system: &CosetSystem) -> f64 {
        (system.subgroup_order() as f64).powi(system.index() as i32)
    }
}

impl<'a> Iterator for RepSetIter<'a> {
    type Item = RepSet;

    fn next(&mut self) -> Option<RepSet> {
        if self.done {
            return None;
        }
        let reps = self
            .odometer
            .iter()
            .enumerate()
            .map(|(c, &i)| self.system.coset_members(c)[i])
            .collect();
        // advance
        let mut pos = self.odometer.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.odometer[pos] += 1;
            if self.odometer[pos] < self.system.coset_members(pos).len() {
                break;
            }
            self.odometer[pos] = 0;
        }
        Some(RepSet { reps })
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::s3_table;
    use super::*;

    #[test]
    fn cyclic_cosets() {
        let g = FiniteGroup::cyclic(9).unwrap();
        let sys = CosetSystem::new(g, &[0, 3, 6]).unwrap();
        assert_eq!(sys.index(), 3);
        assert_eq!(sys.coset_members(0), &[0, 3, 6]);
        assert_eq!(sys.coset_members(1), &[1, 4, 7]);
        assert_eq!(sys.coset_members(2), &[2, 5, 8]);
        assert_eq!(sys.coset_of(7), 1);
    }

    #[test]
    fn s3_alternating_subgroup_is_normal() {
        let g = FiniteGroup::from_table(&s3_table()).unwrap();
        // even permutations: identity and the two 3-cycles
        let a3: Vec<Elem> = g.elements().filter(|&x| [0, 3, 4].contains(&x)).collect();
        let sys = CosetSystem::new(g, &a3).unwrap();
        assert_eq!(sys.index(), 2);
    }

    #[test]
    fn s3_transposition_subgroup_not_normal() {
        let g = FiniteGroup::from_table(&s3_table()).unwrap();
        // {e, (12)} where (12) is the permutation [1,0,2]
        let res = CosetSystem::new(g, &[0, 2]);
        assert!(matches!(res, Err(GroupError::SubgroupNotNormal { .. })));
    }

    #[test]
    fn coset_partition_and_membership() {
        let g = FiniteGroup::cyclic(12).unwrap();
        let sys = CosetSystem::new(g, &[0, 4, 8]).unwrap();
        let g = sys.group();
        for x in g.elements() {
            for y in g.elements() {
                let same = sys.coset_of(x) == sys.coset_of(y);
                let quotient_test = sys.in_subgroup(g.mul(g.inv(x), y));
                assert_eq!(same, quotient_test);
            }
        }
        let total: usize = (0..sys.index()).map(|i| sys.coset_members(i).len()).sum();
        assert_eq!(total, 12);
    }

    #[test]
    fn not_a_subgroup_rejected() {
        let g = FiniteGroup::cyclic(9).unwrap();
        assert!(matches!(
            CosetSystem::new(g.clone(), &[0, 1, 8]),
            Err(GroupError::SubgroupNotClosed { .. })
        ));
        assert!(matches!(
            CosetSystem::new(g.clone(), &[0, 3, 5]),
            Err(GroupError::SubgroupMissingInverse(_))
        ));
        assert!(matches!(
            CosetSystem::new(g, &[3, 6]),
            Err(GroupError::SubgroupMissingIdentity)
        ));
    }

    #[test]
    fn rep_set_validation() {
        let g = FiniteGroup::cyclic(9).unwrap();
        let sys = CosetSystem::new(g, &[0, 3, 6]).unwrap();
        let reps = RepSet::new(&sys, vec![0, 1, 8]).unwrap();
        assert!(reps.is_rep(&sys, 8));
        assert!(!reps.is_rep(&sys, 2));
        assert!(matches!(
            RepSet::new(&sys, vec![0, 1]),
            Err(GroupError::WrongRepCount { .. })
        ));
        assert!(matches!(
            RepSet::new(&sys, vec![0, 2, 1]),
            Err(GroupError::WrongCoset { .. })
        ));
    }

    #[test]
    fn rep_set_enumeration() {
        let g = FiniteGroup::cyclic(9).unwrap();
        let sys = CosetSystem::new(g, &[0, 3, 6]).unwrap();
        let all: Vec<RepSet> = all_rep_sets(&sys).collect();
        assert_eq!(all.len(), 27);
        assert_eq!(all[0].reps(), &[0, 1, 2]);
        assert_eq!(all[26].reps(), &[6, 7, 8]);
        // all valid and distinct
        for r in &all {
            assert!(RepSet::new(&sys, r.reps().to_vec()).is_ok());
        }
    }

    #[test]
    fn quotient_group_structure() {
        let g = FiniteGroup::cyclic(9).unwrap();
        let sys = CosetSystem::new(g, &[0, 3, 6]).unwrap();
        let q = sys.quotient();
        assert_eq!(q.order(), 3);
        assert_eq!(q.mul(1, 2), 0);
        assert_eq!(q.inv(1), 2);
    }
}
