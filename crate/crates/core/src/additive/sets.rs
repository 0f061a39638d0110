//! Integer and modular sets with sumsets and representation counting.

use super::AdditiveError;
use crate::bitset::ElemSet;

/// Sorted, distinct integers; the ambient is Z, so sums never wrap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSet {
    elems: Vec<i64>,
}

impl IntSet {
    pub fn new(mut elems: Vec<i64>) -> Self {
        elems.sort_unstable();
        elems.dedup();
        IntSet { elems }
    }

    pub fn elems(&self) -> &[i64] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: i64) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn neg(&self) -> IntSet {
        IntSet::new(self.elems.iter().map(|&x| -x).collect())
    }

    pub fn sumset(&self, other: &IntSet) -> IntSet {
        let mut sums = Vec::with_capacity(self.len() * other.len());
        for &a in &self.elems {
            for &b in &other.elems {
                sums.push(a + b);
            }
        }
        IntSet::new(sums)
    }
}

/// A subset of Z/mZ with elements in 0..m.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModSet {
    modulus: usize,
    elems: Vec<usize>,
}

impl ModSet {
    pub fn new(modulus: usize, mut elems: Vec<usize>) -> Result<Self, AdditiveError> {
        if modulus == 0 {
            return Err(AdditiveError::ZeroModulus);
        }
        elems.sort_unstable();
        elems.dedup();
        if let Some(&bad) = elems.iter().find(|&&e| e >= modulus) {
            return Err(AdditiveError::OutOfRange(bad, modulus));
        }
        Ok(ModSet { modulus, elems })
    }

    /// Builds from arbitrary integers, reducing mod m.
    pub fn reduced(modulus: usize, ints: &[i64]) -> Result<Self, AdditiveError> {
        if modulus == 0 {
            return Err(AdditiveError::ZeroModulus);
        }
        let elems = ints
            .iter()
            .map(|&x| x.rem_euclid(modulus as i64) as usize)
            .collect();
        ModSet::new(modulus, elems)
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn elems(&self) -> &[usize] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    pub fn neg(&self) -> ModSet {
        let m = self.modulus;
        let elems = self.elems.iter().map(|&x| (m - x) % m).collect();
        ModSet::new(m, elems).expect("negation stays in range")
    }

    pub fn sumset(&self, other: &ModSet) -> Result<ModSet, AdditiveError> {
        if self.modulus != other.modulus {
            return Err(AdditiveError::ModulusMismatch(self.modulus, other.modulus));
        }
        let m = self.modulus;
        let mut mask = ElemSet::new(m);
        for &a in &self.elems {
            for &b in &other.elems {
                mask.insert((a + b) % m);
            }
        }
        ModSet::new(m, mask.iter().collect())
    }
}

/// A set together with its ambient, for operations that accept either.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AddSet {
    Int(IntSet),
    Mod(ModSet),
}

impl AddSet {
    pub fn len(&self) -> usize {
        match self {
            AddSet::Int(s) => s.len(),
            AddSet::Mod(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Elements as integers (modular elements as their least residues).
    pub fn elems_i64(&self) -> Vec<i64> {
        match self {
            AddSet::Int(s) => s.elems().to_vec(),
            AddSet::Mod(s) => s.elems().iter().map(|&x| x as i64).collect(),
        }
    }

    /// Whether x + y = z + w holds in this ambient.
    pub fn quadruple_holds(&self, x: i64, y: i64, z: i64, w: i64) -> bool {
        match self {
            AddSet::Int(_) => x + y == z + w,
            AddSet::Mod(s) => {
                (x + y).rem_euclid(s.modulus() as i64) == (z + w).rem_euclid(s.modulus() as i64)
            }
        }
    }
}

/// Sumset in a shared ambient.
pub fn sumset(a: &AddSet, b: &AddSet) -> Result<AddSet, AdditiveError> {
    match (a, b) {
        (AddSet::Int(a), AddSet::Int(b)) => Ok(AddSet::Int(a.sumset(b))),
        (AddSet::Mod(a), AddSet::Mod(b)) => Ok(AddSet::Mod(a.sumset(b)?)),
        _ => Err(AdditiveError::AmbientMismatch),
    }
}

/// n(x, A1, ..., Ak) for every x in Z/m: the number of ways to write x as
/// a1 + ... + ak with ai in Ai. Iterated convolution of indicators.
pub fn rep_counts(sets: &[&ModSet]) -> Result<Vec<u64>, AdditiveError> {
    let first = *sets
        .first()
        .ok_or(AdditiveError::TooFewSets { need: 1, got: 0 })?;
    let m = first.modulus();
    for s in sets {
        if s.modulus() != m {
            return Err(AdditiveError::ModulusMismatch(m, s.modulus()));
        }
    }
    let mut counts = vec![0u64; m];
    for &a in first.elems() {
        counts[a] = 1;
    }
    for s in &sets[1..] {
        let mut next = vec![0u64; m];
        for &a in s.elems() {
            for (x, &c) in counts.iter().enumerate() {
                if c > 0 {
                    next[(x + a) % m] += c;
                }
            }
        }
        counts = next;
    }
    Ok(counts)
}

/// Number of representations of x as a sum over the given sets.
pub fn rep_count(x: usize, sets: &[&ModSet]) -> Result<u64, AdditiveError> {
    let counts = rep_counts(sets)?;
    let m = counts.len();
    if x >= m {
        return Err(AdditiveError::OutOfRange(x, m));
    }
    Ok(counts[x])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sumsets() {
        let a = ModSet::new(5, vec![0, 1]).unwrap();
        assert_eq!(a.sumset(&a).unwrap().elems(), &[0, 1, 2]);

        let z = IntSet::new(vec![0, 1, 3]);
        assert_eq!(z.sumset(&z).elems(), &[0, 1, 2, 3, 4, 6]);

        let b = ModSet::new(7, vec![0]).unwrap();
        assert!(matches!(
            a.sumset(&b),
            Err(AdditiveError::ModulusMismatch(5, 7))
        ));
    }

    #[test]
    fn ambient_mismatch_rejected() {
        let a = AddSet::Int(IntSet::new(vec![0, 1]));
        let b = AddSet::Mod(ModSet::new(5, vec![0, 1]).unwrap());
        assert!(matches!(
            sumset(&a, &b),
            Err(AdditiveError::AmbientMismatch)
        ));
    }

    #[test]
    fn rep_count_triple() {
        let m9 = ModSet::new(9, vec![0, 1, 8]).unwrap();
        let neg = m9.neg();
        // seven solution triples of a + b = c over {0,1,8}
        assert_eq!(rep_count(0, &[&m9, &m9, &neg]).unwrap(), 7);
    }

    #[test]
    fn rep_counts_total_mass() {
        let a = ModSet::new(12, vec![0, 2, 3, 7]).unwrap();
        let b = ModSet::new(12, vec![1, 5, 6]).unwrap();
        let counts = rep_counts(&[&a, &b]).unwrap();
        assert_eq!(counts.iter().sum::<u64>(), (a.len() * b.len()) as u64);
    }

    #[test]
    fn reduced_and_bounds() {
        let s = ModSet::reduced(9, &[-1, 10, 3]).unwrap();
        assert_eq!(s.elems(), &[1, 3, 8]);
        assert!(matches!(
            ModSet::new(5, vec![5]),
            Err(AdditiveError::OutOfRange(5, 5))
        ));
        assert!(matches!(
            ModSet::new(0, vec![]),
            Err(AdditiveError::ZeroModulus)
        ));
    }
}
